#pragma once

#include <vector>

#include "latentgeom/vec.hpp"

namespace latentgeom::geometry {

// Degenerate-angle threshold for slerp, in radians.
inline constexpr double kEpsAngle = 1e-7;

LatentVector lerp(const LatentVector& z0, const LatentVector& z1, double t);

// Spherical interpolation
//   h(t) = sin((1-t) theta)/sin(theta) z0 + sin(t theta)/sin(theta) z1
// with theta the angle between the endpoints. Positively collinear
// endpoints fall back to lerp; antipodal endpoints are an error because the
// connecting great circle is not unique.
LatentVector slerp(const LatentVector& z0, const LatentVector& z1, double t);

// Angle between two non-zero vectors, computed from the normalized sum and
// difference with atan2; stable near 0 and pi where acos(dot) is not.
double angle_between(const LatentVector& a, const LatentVector& b);

enum class PathKind { Linear, Spherical };

struct Path {
    PathKind kind;
    LatentVector z0;
    LatentVector z1;

    LatentVector at(double t) const;
};

struct PathProfile {
    std::vector<double> ts;
    std::vector<double> norms;
    double midpoint_norm_ratio; // ||h(1/2)|| / mean endpoint norm
};

PathProfile path_profile(const Path& path, int n_steps);

} // namespace latentgeom::geometry
