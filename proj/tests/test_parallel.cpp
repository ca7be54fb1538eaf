#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <numeric>
#include <vector>

#include "latentgeom/parallel.hpp"
#include "latentgeom/report_io.hpp"
#include "latentgeom/toygan.hpp"
#include "latentgeom/verify.hpp"

using namespace latentgeom;
using numerics::GammaParams;
using numerics::RngStream;
using parallel::Exec;
using priors::LatentPrior;

TEST_CASE("chunk ranges partition the index space") {
    for (std::size_t n : {std::size_t(0), std::size_t(1), std::size_t(255), std::size_t(1000),
                          std::size_t(12345)}) {
        std::size_t covered = 0;
        std::size_t prev_end = 0;
        for (int c = 0; c < parallel::kDefaultChunks; ++c) {
            const auto r = parallel::chunk_range(n, parallel::kDefaultChunks, c);
            CHECK(r.begin == prev_end);
            CHECK(r.end >= r.begin);
            covered += r.end - r.begin;
            prev_end = r.end;
        }
        CHECK(prev_end == n);
        CHECK(covered == n);
    }
}

TEST_CASE("for_each_chunk touches every item exactly once") {
    std::vector<int> hits(1000, 0);
    parallel::for_each_chunk(hits.size(), 64, Exec::Serial,
                             [&](int, std::size_t b, std::size_t e) {
                                 for (std::size_t i = b; i < e; ++i) ++hits[i];
                             });
    CHECK(std::accumulate(hits.begin(), hits.end(), 0) == 1000);
    CHECK(*std::min_element(hits.begin(), hits.end()) == 1);
    CHECK(*std::max_element(hits.begin(), hits.end()) == 1);
}

TEST_CASE("kahan summation compensates") {
    parallel::KahanSum s;
    s.add(1.0);
    for (int i = 0; i < 10000000; ++i) s.add(1e-16);
    CHECK(s.value() == doctest::Approx(1.0 + 1e-9).epsilon(1e-12));
}

TEST_CASE("endpoint sampling kernel: serial and OpenMP bit-identical") {
    const LatentPrior prior = LatentPrior::normal(16, 1.0);
    const auto serial = verify::sampled_endpoint_sqnorms(prior, 50000, RngStream(1, 2),
                                                         Exec::Serial);
    const auto par = verify::sampled_endpoint_sqnorms(prior, 50000, RngStream(1, 2),
                                                      Exec::OpenMp);
    CHECK(serial == par);

    const auto mid_s = verify::sampled_midpoint_sqnorms(prior, 20000, RngStream(3, 4),
                                                        Exec::Serial);
    const auto mid_p = verify::sampled_midpoint_sqnorms(prior, 20000, RngStream(3, 4),
                                                        Exec::OpenMp);
    CHECK(mid_s == mid_p);
}

TEST_CASE("kl kernel: serial and OpenMP bit-identical") {
    const auto s = verify::mc_kl_estimate(GammaParams(50.0, 2.0), GammaParams(50.0, 1.0), 200000,
                                          RngStream(5, 6), Exec::Serial);
    const auto p = verify::mc_kl_estimate(GammaParams(50.0, 2.0), GammaParams(50.0, 1.0), 200000,
                                          RngStream(5, 6), Exec::OpenMp);
    CHECK(s.estimate == p.estimate);
    CHECK(s.std_error == p.std_error);
}

TEST_CASE("profile kernel: serial and OpenMP bit-identical") {
    RngStream init_g(7, 1), init_d(7, 2);
    const auto g = toygan::Mlp::create({8, 16, 2},
                                       {toygan::Activation::ReLU, toygan::Activation::Identity},
                                       init_g);
    const auto d = toygan::Mlp::create(
        {2, 16, 1}, {toygan::Activation::LeakyReLU, toygan::Activation::Sigmoid}, init_d);
    const LatentPrior prior = LatentPrior::gamma_radius(8, 1.0);
    const auto ps = toygan::discriminator_profile(g, d, prior, geometry::PathKind::Linear, 2000,
                                                  20, RngStream(8, 3), Exec::Serial);
    const auto pp = toygan::discriminator_profile(g, d, prior, geometry::PathKind::Linear, 2000,
                                                  20, RngStream(8, 3), Exec::OpenMp);
    CHECK(ps.mean == pp.mean);
    CHECK(ps.stddev == pp.stddev);
}

#ifdef _OPENMP
TEST_CASE("results do not depend on the OpenMP thread count") {
    const LatentPrior prior = LatentPrior::gamma_radius(8, 2.0);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = verify::sampled_endpoint_sqnorms(prior, 30000, RngStream(9, 1),
                                                      Exec::OpenMp);
    omp_set_num_threads(saved);
    const auto many = verify::sampled_endpoint_sqnorms(prior, 30000, RngStream(9, 1),
                                                       Exec::OpenMp);
    CHECK(one == many);
}
#endif
