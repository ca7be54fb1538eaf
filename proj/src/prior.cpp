#include "latentgeom/prior.hpp"

#include <cmath>

#include "latentgeom/samplers.hpp"

namespace latentgeom::priors {

namespace {

void validate(const LatentPrior& prior) {
    if (prior.d < 1) throw InvalidConfig("LatentPrior: d must be >= 1");
    if (!(prior.scale_param > 0.0) || !std::isfinite(prior.scale_param))
        throw InvalidConfig("LatentPrior: scale parameter must be positive and finite");
}

} // namespace

LatentPrior LatentPrior::normal(int d, double sigma) {
    LatentPrior p{PriorFamily::Normal, d, sigma};
    validate(p);
    return p;
}

LatentPrior LatentPrior::gamma_radius(int d, double theta) {
    LatentPrior p{PriorFamily::GammaRadius, d, theta};
    validate(p);
    return p;
}

std::string LatentPrior::family_name() const {
    return family == PriorFamily::Normal ? "normal" : "gamma";
}

LatentVector sample(const LatentPrior& prior, RngStream& rng) {
    if (prior.family == PriorFamily::Normal) {
        LatentVector z(static_cast<std::size_t>(prior.d));
        for (auto& x : z) x = prior.scale_param * rng.normal();
        return z;
    }
    const double r = numerics::sample_gamma(GammaParams(0.5, prior.scale_param), rng);
    LatentVector z = numerics::sample_unit_sphere(prior.d, rng);
    const double root = std::sqrt(r);
    for (auto& x : z) x *= root;
    return z;
}

GammaParams squared_norm_distribution(const LatentPrior& prior) {
    if (prior.family == PriorFamily::Normal)
        return GammaParams(0.5 * prior.d, 2.0 * prior.scale_param * prior.scale_param);
    return GammaParams(0.5, prior.scale_param);
}

MidpointLaw midpoint_squared_norm_distribution(const LatentPrior& prior) {
    if (prior.family == PriorFamily::Normal)
        return {GammaParams(0.5 * prior.d, prior.scale_param * prior.scale_param), false};
    return {GammaParams(0.5, 0.5 * prior.scale_param), true};
}

double prior_midpoint_kl(const LatentPrior& prior) {
    const GammaParams endpoint = squared_norm_distribution(prior);
    const MidpointLaw midpoint = midpoint_squared_norm_distribution(prior);
    return numerics::gamma_kl_same_shape(endpoint.shape, endpoint.scale, midpoint.params.scale);
}

} // namespace latentgeom::priors
