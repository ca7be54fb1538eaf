#pragma once

#include <vector>

#include "latentgeom/gamma.hpp"
#include "latentgeom/rng.hpp"
#include "latentgeom/vec.hpp"

namespace latentgeom::numerics {

inline double sample_standard_normal(RngStream& rng) { return rng.normal(); }

// One Gamma(shape, scale) variate. shape == 1/2 takes the square-of-normal
// fast path; everything else goes through Marsaglia-Tsang.
double sample_gamma(const GammaParams& p, RngStream& rng);

// The general Marsaglia-Tsang path, exposed so the shape = 1/2 fast path can
// be checked against it in distribution.
double sample_gamma_marsaglia_tsang(const GammaParams& p, RngStream& rng);

// Uniform direction on the unit sphere in R^d (normalized Gaussian vector).
LatentVector sample_unit_sphere(int d, RngStream& rng);

} // namespace latentgeom::numerics
