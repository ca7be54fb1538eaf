#pragma once

#include <string>

#include "latentgeom/gamma.hpp"
#include "latentgeom/rng.hpp"
#include "latentgeom/vec.hpp"

namespace latentgeom::priors {

using numerics::GammaParams;
using numerics::RngStream;

enum class PriorFamily { Normal, GammaRadius };

// The two latent prior families:
//   Normal:      d iid N(0, sigma^2) coordinates; ||z||^2 ~ Gamma(d/2, 2 sigma^2).
//   GammaRadius: z = sqrt(r) v with v uniform on the sphere and
//                r ~ Gamma(1/2, theta); ||z||^2 ~ Gamma(1/2, theta) for every d.
struct LatentPrior {
    PriorFamily family;
    int d;
    double scale_param; // sigma for Normal, theta for GammaRadius

    static LatentPrior normal(int d, double sigma);
    static LatentPrior gamma_radius(int d, double theta);

    std::string family_name() const;
};

LatentVector sample(const LatentPrior& prior, RngStream& rng);

// Analytic law of ||z||^2 for a single draw.
GammaParams squared_norm_distribution(const LatentPrior& prior);

// Law of ||(z0 + z1)/2||^2 for independent draws. Exact for the Normal
// family; for GammaRadius the Gamma(1/2, theta/2) law is stated without
// proof for d > 1, which the `claimed` flag records (the verify module
// measures it).
struct MidpointLaw {
    GammaParams params;
    bool claimed;
};

MidpointLaw midpoint_squared_norm_distribution(const LatentPrior& prior);

// KL between the endpoint and midpoint radial laws, in nats.
double prior_midpoint_kl(const LatentPrior& prior);

} // namespace latentgeom::priors
