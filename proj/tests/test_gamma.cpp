#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "latentgeom/gamma.hpp"
#include "latentgeom/rng.hpp"
#include "latentgeom/samplers.hpp"
#include "test_util.hpp"

using namespace latentgeom;
using numerics::GammaParams;
using numerics::RngStream;

TEST_CASE("gamma_pdf closed-form values") {
    // exponential special case
    CHECK(numerics::gamma_pdf(2.0, GammaParams(1.0, 2.0)) ==
          doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
    // chi^2(2) at 2 is the same exponential value
    CHECK(numerics::gamma_pdf(2.0, GammaParams(1.0, 2.0)) ==
          doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
    // chi^2(1) at 1 against the squared-normal change of variables
    CHECK(numerics::gamma_pdf(1.0, GammaParams(0.5, 2.0)) ==
          doctest::Approx(testutil::chi2_1_density(1.0)).epsilon(1e-12));
    CHECK(testutil::chi2_1_density(1.0) == doctest::Approx(0.24197072451914337).epsilon(1e-12));
}

TEST_CASE("gamma_pdf at the origin") {
    CHECK(numerics::gamma_pdf(0.0, GammaParams(2.0, 1.0)) == 0.0);
    CHECK(numerics::gamma_pdf(0.0, GammaParams(1.0, 4.0)) == doctest::Approx(0.25));
    CHECK(numerics::gamma_pdf(0.0, GammaParams(0.5, 2.0)) ==
          std::numeric_limits<double>::infinity());
    CHECK(numerics::gamma_pdf_diverges_at_zero(GammaParams(0.5, 2.0)));
    CHECK_FALSE(numerics::gamma_pdf_diverges_at_zero(GammaParams(1.5, 2.0)));
}

TEST_CASE("gamma_pdf input validation") {
    CHECK_THROWS_AS(numerics::gamma_pdf(std::nan(""), GammaParams(1.0, 1.0)), NonFiniteInput);
    CHECK_THROWS_AS(
        numerics::gamma_pdf(std::numeric_limits<double>::infinity(), GammaParams(1.0, 1.0)),
        NonFiniteInput);
    CHECK_THROWS_AS(GammaParams(0.0, 1.0), NonFiniteInput);
    CHECK_THROWS_AS(GammaParams(1.0, -2.0), NonFiniteInput);
}

TEST_CASE("gamma_cdf values and limits") {
    CHECK(numerics::gamma_cdf(0.0, GammaParams(0.5, 2.0)) == 0.0);
    CHECK(numerics::gamma_cdf(1e6, GammaParams(0.5, 2.0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(numerics::gamma_cdf(2.0, GammaParams(1.0, 2.0)) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("gamma_cdf is monotone") {
    const GammaParams p(2.5, 1.5);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = 0.1 * i;
        const double c = numerics::gamma_cdf(x, p);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("gamma_cdf iteration cap raises ConvergenceFailure") {
    CHECK_THROWS_AS(numerics::gamma_cdf(1e6, GammaParams(1e6, 1.0)),
                    latentgeom::ConvergenceFailure);
}

TEST_CASE("pdf is the derivative of cdf") {
    for (const GammaParams p : {GammaParams(0.5, 2.0), GammaParams(2.5, 1.0),
                                GammaParams(50.0, 2.0)}) {
        const double mean = p.mean();
        for (int i = 1; i <= 100; ++i) {
            const double x = mean * (0.2 + 2.8 * i / 100.0);
            const double h = 1e-4 * std::max(1.0, x);
            const double deriv =
                (numerics::gamma_cdf(x + h, p) - numerics::gamma_cdf(x - h, p)) / (2.0 * h);
            CHECK(std::fabs(deriv - numerics::gamma_pdf(x, p)) < 1e-6);
        }
    }
}

TEST_CASE("pdf integrates to one") {
    for (double shape : {0.5, 1.0, 2.5, 50.0})
        for (double scale : {0.5, 1.0, 2.0}) {
            const GammaParams p(shape, scale);
            const double upper =
                shape * scale + 40.0 * std::sqrt(shape) * scale;
            const double mass = testutil::simpson_gamma_mass(p, upper, 400000);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
        }
}

TEST_CASE("gamma_kl_same_shape closed-form values") {
    CHECK(numerics::gamma_kl_same_shape(3.0, 1.7, 1.7) == 0.0);
    CHECK(numerics::gamma_kl_same_shape(50.0, 2.0, 1.0) ==
          doctest::Approx(50.0 * (1.0 - std::log(2.0))).epsilon(1e-15));
    CHECK(numerics::gamma_kl_same_shape(50.0, 2.0, 1.0) == doctest::Approx(15.3426).epsilon(1e-5));
    for (double theta : {0.5, 1.0, 2.0})
        CHECK(numerics::gamma_kl_same_shape(0.5, theta, theta / 2.0) ==
              doctest::Approx(0.15342640972002733).epsilon(1e-15));
}

TEST_CASE("gamma_kl_same_shape nonnegativity") {
    RngStream rng(77, 0);
    for (int i = 0; i < 2000; ++i) {
        const double a = 0.1 + 5.0 * rng.uniform();
        const double b1 = 0.1 + 4.0 * rng.uniform();
        const double b2 = 0.1 + 4.0 * rng.uniform();
        const double kl = numerics::gamma_kl_same_shape(a, b1, b2);
        CHECK(kl >= 0.0);
        if (b1 != b2) CHECK(kl > 0.0);
    }
    CHECK(numerics::gamma_kl_same_shape(2.0, 3.0, 3.0) == 0.0);
}

// MC oracle: for same-shape gammas the log-likelihood ratio reduces to
// x (1/b2 - 1/b1) + a ln(b2/b1), which bypasses both gamma_kl_same_shape
// and gamma_log_pdf.
TEST_CASE("gamma_kl_same_shape agrees with brute-force Monte Carlo") {
    RngStream param_rng(404, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = 0.4 + 4.0 * param_rng.uniform();
        const double b1 = 0.5 + 2.0 * param_rng.uniform();
        const double b2 = 0.5 + 2.0 * param_rng.uniform();
        const GammaParams p(a, b1);
        RngStream rng(500 + trial, 1);
        const std::size_t n = 1000000;
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = numerics::sample_gamma(p, rng);
            const double llr = x * (1.0 / b2 - 1.0 / b1) + a * std::log(b2 / b1);
            sum += llr;
            sum2 += llr * llr;
        }
        const double mean = sum / double(n);
        const double se = std::sqrt((sum2 / double(n) - mean * mean) / double(n));
        const double closed = numerics::gamma_kl_same_shape(a, b1, b2);
        CHECK(std::fabs(mean - closed) <= 4.0 * se);
    }
}
