#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "latentgeom/report_io.hpp"
#include "latentgeom/samplers.hpp"
#include "latentgeom/verify.hpp"
#include "test_util.hpp"

using namespace latentgeom;
using numerics::GammaParams;
using numerics::RngStream;
using priors::LatentPrior;
using verify::McReport;
using verify::Verdict;

TEST_CASE("ks_statistic forced value at inverse-cdf quantiles") {
    // exponential with scale 2; F^{-1}(p) = -2 ln(1-p)
    const GammaParams p(1.0, 2.0);
    std::vector<double> xs;
    for (int i = 1; i <= 10; ++i) xs.push_back(-2.0 * std::log(1.0 - (i - 0.5) / 10.0));
    std::sort(xs.begin(), xs.end());
    const double d = verify::ks_statistic(xs, [&](double x) { return numerics::gamma_cdf(x, p); });
    CHECK(d == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("ks_statistic is 1 when all samples precede the support") {
    const GammaParams p(2.0, 1.0);
    const std::vector<double> xs = {-5.0, -4.0, -3.0};
    const double d = verify::ks_statistic(xs, [&](double x) { return numerics::gamma_cdf(x, p); });
    CHECK(d == 1.0);
}

TEST_CASE("ks_statistic of true samples stays below the 1% critical value") {
    const GammaParams p(0.5, 2.0);
    RngStream rng(91, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = numerics::sample_gamma(p, rng);
    std::sort(xs.begin(), xs.end());
    const double d = verify::ks_statistic(xs, [&](double x) { return numerics::gamma_cdf(x, p); });
    CHECK(d < verify::ks_one_percent_critical(xs.size()));
}

TEST_CASE("ks_statistic input validation") {
    const auto cdf = [](double) { return 0.5; };
    CHECK_THROWS_AS(verify::ks_statistic(std::vector<double>{}, cdf), EmptyInput);
    CHECK_THROWS_AS(verify::ks_statistic(std::vector<double>{2.0, 1.0}, cdf), NonFiniteInput);
}

TEST_CASE("mc_endpoint_check: normal d=100") {
    const auto reports =
        verify::mc_endpoint_check(LatentPrior::normal(100, 1.0), 100000, RngStream(92, 0));
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].claimed_value == 100.0);
    CHECK(reports[0].verdict == Verdict::Consistent);
    CHECK(reports[0].estimate == doctest::Approx(100.0).epsilon(0.01));
    // Var(||z||^2/d) = 2/d = 0.02 in natural units: var estimate / d^2
    CHECK(reports[1].claimed_value == 200.0);
    CHECK(reports[1].verdict == Verdict::Consistent);
    CHECK(reports[1].estimate / (100.0 * 100.0) == doctest::Approx(0.02).epsilon(0.05));
    CHECK(reports[2].verdict == Verdict::Consistent);
    CHECK(*reports[2].ks_statistic < verify::ks_one_percent_critical(100000));
}

TEST_CASE("mc_endpoint_check: gamma prior at high dimension") {
    const auto reports =
        verify::mc_endpoint_check(LatentPrior::gamma_radius(500, 2.0), 100000, RngStream(93, 0));
    CHECK(reports[0].claimed_value == 1.0);
    CHECK(reports[0].verdict == Verdict::Consistent);
    CHECK(reports[0].estimate == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("mc_midpoint_check verdict policy") {
    const McReport normal =
        verify::mc_midpoint_check(LatentPrior::normal(100, 1.0), 100000, RngStream(94, 0));
    CHECK(normal.verdict == Verdict::Consistent);
    CHECK(*normal.ks_statistic < verify::ks_one_percent_critical(100000));

    // d = 1 coincides with N(0, theta/2) so the claimed law is exact there,
    // but the verdict stays Informational by policy.
    const McReport g1 =
        verify::mc_midpoint_check(LatentPrior::gamma_radius(1, 2.0), 100000, RngStream(95, 0));
    CHECK(g1.verdict == Verdict::Informational);
    CHECK(*g1.ks_statistic < verify::ks_one_percent_critical(100000));

    const McReport g100 =
        verify::mc_midpoint_check(LatentPrior::gamma_radius(100, 2.0), 100000, RngStream(96, 0));
    CHECK(g100.verdict == Verdict::Informational);
    CHECK(g100.ks_statistic.has_value());
}

TEST_CASE("mc_kl_estimate against closed forms") {
    const McReport zero = verify::mc_kl_estimate(GammaParams(2.0, 1.5), GammaParams(2.0, 1.5),
                                                 100000, RngStream(97, 0));
    CHECK(zero.claimed_value == 0.0);
    CHECK(zero.estimate == 0.0);
    CHECK(zero.verdict == Verdict::Consistent);

    const McReport high_d = verify::mc_kl_estimate(GammaParams(50.0, 2.0), GammaParams(50.0, 1.0),
                                                  1000000, RngStream(98, 0));
    CHECK(high_d.claimed_value == doctest::Approx(15.342640972).epsilon(1e-9));
    CHECK(high_d.verdict == Verdict::Consistent);
    CHECK(high_d.estimate == doctest::Approx(15.3426).epsilon(0.01));

    for (double theta : {0.5, 1.0, 2.0}) {
        const McReport prop =
            verify::mc_kl_estimate(GammaParams(0.5, theta), GammaParams(0.5, theta / 2.0),
                                   1000000, RngStream(99, std::uint64_t(theta * 4)));
        CHECK(prop.claimed_value == doctest::Approx(0.15342640972).epsilon(1e-9));
        CHECK(prop.verdict == Verdict::Consistent);
    }
}

TEST_CASE("mc_kl_estimate converges as n grows") {
    const GammaParams p(3.0, 1.2), q(3.0, 0.7);
    const double closed = numerics::gamma_kl_same_shape(3.0, 1.2, 0.7);
    double gap_small = 0.0, gap_large = 0.0;
    double se_large = 0.0;
    for (std::size_t n : {std::size_t(10000), std::size_t(100000), std::size_t(1000000)}) {
        const McReport r = verify::mc_kl_estimate(p, q, n, RngStream(100, 0));
        const double gap = std::fabs(r.estimate - closed);
        if (n == 10000) gap_small = gap;
        if (n == 1000000) {
            gap_large = gap;
            se_large = r.std_error;
        }
    }
    CHECK(gap_large <= gap_small);
    CHECK(gap_large <= 4.0 * se_large);
}

TEST_CASE("reports are reproducible bit for bit") {
    const LatentPrior prior = LatentPrior::gamma_radius(10, 1.0);
    const auto a = verify::mc_endpoint_check(prior, 20000, RngStream(101, 5));
    const auto b = verify::mc_endpoint_check(prior, 20000, RngStream(101, 5));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(io::mc_report_csv_row(a[i]) == io::mc_report_csv_row(b[i]));
    const auto ka = verify::mc_kl_estimate(GammaParams(2.0, 2.0), GammaParams(2.0, 1.0), 50000,
                                           RngStream(102, 8));
    const auto kb = verify::mc_kl_estimate(GammaParams(2.0, 2.0), GammaParams(2.0, 1.0), 50000,
                                           RngStream(102, 8));
    CHECK(ka.estimate == kb.estimate);
    CHECK(ka.std_error == kb.std_error);
}

// --- Latent Algebra Score ----------------------------------------------

namespace {

verify::AttributeGroups exact_parallelogram_pair(const LatentVector& u, const LatentVector& v,
                                                 const LatentVector& base) {
    auto add = [&](const LatentVector& a, const LatentVector& b) {
        LatentVector out = base;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += a[i] + b[i];
        return out;
    };
    const LatentVector zero(base.size(), 0.0);
    verify::AttributeGroups g;
    g.with_both = {add(u, v)};
    g.second_only = {add(zero, v)};
    g.with_neither = {add(zero, zero)};
    g.first_only = {add(u, zero)};
    return g;
}

} // namespace

TEST_CASE("LAS is exactly zero on parallelogram groups") {
    const int d = 6;
    std::vector<LatentVector> dirs;
    for (int a = 0; a < 4; ++a) {
        LatentVector u(d, 0.0);
        u[std::size_t(a)] = double(a + 1); // integer coordinates, exact arithmetic
        dirs.push_back(u);
    }
    const LatentVector base = {1.0, -2.0, 3.0, 0.0, 5.0, -1.0};
    std::vector<verify::AttributeGroups> groups;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            groups.push_back(exact_parallelogram_pair(dirs[std::size_t(i)],
                                                      dirs[std::size_t(j)], base));
    const double las = verify::latent_algebra_score(groups, 4);
    CHECK(las <= 1e-12);
}

TEST_CASE("LAS on the synthetic additive construction is tiny") {
    RngStream rng(103, 0);
    const auto groups = verify::synthetic_attribute_groups(4, 16, 256, 0.01, rng);
    REQUIRE(groups.size() == 6);
    const double las = verify::latent_algebra_score(groups, 4);
    CHECK(las < 1e-3);
    CHECK(las >= 0.0);
}

TEST_CASE("LAS is invariant under rotation and scaling") {
    RngStream rng(104, 0);
    const int d = 12;
    auto groups = verify::synthetic_attribute_groups(3, d, 64, 0.05, rng);
    const double base = verify::latent_algebra_score(groups, 3);

    RngStream rot_rng(105, 0);
    const auto rot = testutil::random_rotation(d, rot_rng);
    auto rotated = groups;
    for (auto& g : rotated)
        for (auto* set : {&g.with_both, &g.second_only, &g.with_neither, &g.first_only})
            for (auto& z : *set) z = testutil::apply_rotation(rot, z);
    CHECK(verify::latent_algebra_score(rotated, 3) == doctest::Approx(base).epsilon(1e-10));

    for (double c : {3.0, 0.125, 7.5}) {
        auto scaled = groups;
        for (auto& g : scaled)
            for (auto* set : {&g.with_both, &g.second_only, &g.with_neither, &g.first_only})
                for (auto& z : *set)
                    for (auto& x : z) x *= c;
        CHECK(verify::latent_algebra_score(scaled, 3) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("LAS per-pair normalization runs and stays near the global one here") {
    RngStream rng(106, 0);
    const auto groups = verify::synthetic_attribute_groups(3, 8, 128, 0.01, rng);
    const double global = verify::latent_algebra_score(groups, 3, verify::LasNormalization::Global);
    const double per_pair =
        verify::latent_algebra_score(groups, 3, verify::LasNormalization::PerPair);
    CHECK(per_pair >= 0.0);
    // same construction for every pair, so the normalizations nearly agree
    CHECK(per_pair == doctest::Approx(global).epsilon(0.2));
}

TEST_CASE("LAS input validation") {
    RngStream rng(107, 0);
    auto groups = verify::synthetic_attribute_groups(3, 8, 4, 0.01, rng);
    CHECK_THROWS_AS(verify::latent_algebra_score(groups, 4), MissingGroup); // wrong pair count
    groups[1].first_only.clear();
    CHECK_THROWS_AS(verify::latent_algebra_score(groups, 3), MissingGroup);

    auto mixed = verify::synthetic_attribute_groups(3, 8, 4, 0.01, rng);
    mixed[0].with_both[0].push_back(1.0);
    CHECK_THROWS_AS(verify::latent_algebra_score(mixed, 3), DimensionMismatch);
}
