#include "latentgeom/geometry.hpp"

#include <cmath>

namespace latentgeom::geometry {

LatentVector lerp(const LatentVector& z0, const LatentVector& z1, double t) {
    require_same_dim(z0, z1, "lerp");
    LatentVector out(z0.size());
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = (1.0 - t) * z0[i] + t * z1[i];
    return out;
}

double angle_between(const LatentVector& a, const LatentVector& b) {
    require_same_dim(a, b, "angle_between");
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0) throw DegenerateAngle("angle_between: zero endpoint");
    double sum2 = 0.0, diff2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double u = a[i] / na;
        const double v = b[i] / nb;
        sum2 += (u + v) * (u + v);
        diff2 += (u - v) * (u - v);
    }
    return 2.0 * std::atan2(std::sqrt(diff2), std::sqrt(sum2));
}

LatentVector slerp(const LatentVector& z0, const LatentVector& z1, double t) {
    const double theta = angle_between(z0, z1);
    if (theta < kEpsAngle) return lerp(z0, z1, t); // positively collinear
    if (std::sin(theta) < kEpsAngle)
        throw DegenerateAngle("slerp: antipodal endpoints, great circle not unique");
    const double s = std::sin(theta);
    const double w0 = std::sin((1.0 - t) * theta) / s;
    const double w1 = std::sin(t * theta) / s;
    LatentVector out(z0.size());
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = w0 * z0[i] + w1 * z1[i];
    return out;
}

LatentVector Path::at(double t) const {
    return kind == PathKind::Linear ? lerp(z0, z1, t) : slerp(z0, z1, t);
}

PathProfile path_profile(const Path& path, int n_steps) {
    if (n_steps < 2) throw InvalidConfig("path_profile: n_steps must be >= 2");
    PathProfile profile;
    profile.ts.reserve(static_cast<std::size_t>(n_steps) + 1);
    profile.norms.reserve(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i) {
        const double t = double(i) / double(n_steps);
        profile.ts.push_back(t);
        profile.norms.push_back(norm(path.at(t)));
    }
    const double mean_endpoint = 0.5 * (norm(path.z0) + norm(path.z1));
    const double mid = norm(path.at(0.5));
    profile.midpoint_norm_ratio = mean_endpoint > 0.0 ? mid / mean_endpoint : 0.0;
    return profile;
}

} // namespace latentgeom::geometry
