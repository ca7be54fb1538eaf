#pragma once

#include <cmath>
#include <limits>

#include "latentgeom/errors.hpp"

namespace latentgeom::numerics {

// Shape/scale parameterization: mean = shape*scale, variance = shape*scale^2.
struct GammaParams {
    double shape;
    double scale;

    GammaParams(double shape_arg, double scale_arg) : shape(shape_arg), scale(scale_arg) {
        if (!(shape > 0.0) || !std::isfinite(shape))
            throw NonFiniteInput("GammaParams: shape must be positive and finite");
        if (!(scale > 0.0) || !std::isfinite(scale))
            throw NonFiniteInput("GammaParams: scale must be positive and finite");
    }

    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }

    bool operator==(const GammaParams&) const = default;
};

// The density diverges at the origin for shape < 1; gamma_pdf reports this
// as a +inf sentinel so callers can still render the curve.
inline bool gamma_pdf_diverges_at_zero(const GammaParams& p) { return p.shape < 1.0; }

double gamma_pdf(double x, const GammaParams& p);
double gamma_log_pdf(double x, const GammaParams& p);

// Regularized lower incomplete gamma P(shape, x/scale).
double gamma_cdf(double x, const GammaParams& p);

// KL(Gamma(shape, scale_p) || Gamma(shape, scale_q)) in nats:
//   shape * (scale_p/scale_q - 1 - ln(scale_p/scale_q)).
double gamma_kl_same_shape(double shape, double scale_p, double scale_q);

} // namespace latentgeom::numerics
