#include "latentgeom/samplers.hpp"

#include <cmath>

namespace latentgeom::numerics {

namespace {

// Marsaglia & Tsang (2000), "A simple method for generating gamma
// variables", ACM TOMS 26(3). Requires shape >= 1.
double gamma_squeeze(double shape, RngStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

} // namespace

double sample_gamma_marsaglia_tsang(const GammaParams& p, RngStream& rng) {
    if (p.shape >= 1.0) return p.scale * gamma_squeeze(p.shape, rng);
    // Boost trick: Gamma(a) = Gamma(a+1) * U^(1/a) for a < 1.
    const double g = gamma_squeeze(p.shape + 1.0, rng);
    return p.scale * g * std::pow(rng.uniform_pos(), 1.0 / p.shape);
}

double sample_gamma(const GammaParams& p, RngStream& rng) {
    if (p.shape == 0.5) {
        const double x = rng.normal();
        return 0.5 * p.scale * x * x;
    }
    return sample_gamma_marsaglia_tsang(p, rng);
}

LatentVector sample_unit_sphere(int d, RngStream& rng) {
    if (d < 1) throw InvalidConfig("sample_unit_sphere: d must be >= 1");
    LatentVector v(static_cast<std::size_t>(d));
    for (;;) {
        for (auto& x : v) x = rng.normal();
        const double n = norm(v);
        if (n >= 1e-300) {
            for (auto& x : v) x /= n;
            return v;
        }
        // Degenerate draw; redraw.
    }
}

} // namespace latentgeom::numerics
