// Wall-clock comparison of the serial reference and the OpenMP path for the
// chunked Monte-Carlo kernels, plus a bit-identity check on each pair.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latentgeom/toygan.hpp"
#include "latentgeom/verify.hpp"

using namespace latentgeom;
using numerics::GammaParams;
using numerics::RngStream;
using parallel::Exec;
using priors::LatentPrior;

namespace {

template <class Fn>
double time_seconds(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::string& name, double serial, double openmp, bool identical) {
    std::printf("%-32s serial %7.3f s   openmp %7.3f s   speedup %4.2fx   %s\n", name.c_str(),
                serial, openmp, serial / openmp, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif

    {
        const LatentPrior prior = LatentPrior::normal(100, 1.0);
        std::vector<double> a, b;
        const double ts = time_seconds(
            [&] { a = verify::sampled_endpoint_sqnorms(prior, 1000000, RngStream(1, 1), Exec::Serial); });
        const double tp = time_seconds(
            [&] { b = verify::sampled_endpoint_sqnorms(prior, 1000000, RngStream(1, 1), Exec::OpenMp); });
        report("endpoint sqnorms (1e6, d=100)", ts, tp, a == b);
    }
    {
        const LatentPrior prior = LatentPrior::gamma_radius(100, 1.0);
        std::vector<double> a, b;
        const double ts = time_seconds(
            [&] { a = verify::sampled_midpoint_sqnorms(prior, 500000, RngStream(2, 1), Exec::Serial); });
        const double tp = time_seconds(
            [&] { b = verify::sampled_midpoint_sqnorms(prior, 500000, RngStream(2, 1), Exec::OpenMp); });
        report("midpoint sqnorms (5e5 pairs)", ts, tp, a == b);
    }
    {
        verify::McReport a, b;
        const double ts = time_seconds([&] {
            a = verify::mc_kl_estimate(GammaParams(50.0, 2.0), GammaParams(50.0, 1.0), 4000000,
                                       RngStream(3, 1), Exec::Serial);
        });
        const double tp = time_seconds([&] {
            b = verify::mc_kl_estimate(GammaParams(50.0, 2.0), GammaParams(50.0, 1.0), 4000000,
                                       RngStream(3, 1), Exec::OpenMp);
        });
        report("kl estimate (4e6 draws)", ts, tp,
               a.estimate == b.estimate && a.std_error == b.std_error);
    }
    {
        RngStream ig(4, 1), id(4, 2);
        const auto g = toygan::Mlp::create(
            {32, 64, 64, 2},
            {toygan::Activation::ReLU, toygan::Activation::ReLU, toygan::Activation::Identity},
            ig);
        const auto d = toygan::Mlp::create({2, 64, 64, 1},
                                           {toygan::Activation::LeakyReLU,
                                            toygan::Activation::LeakyReLU,
                                            toygan::Activation::Sigmoid},
                                           id);
        const LatentPrior prior = LatentPrior::gamma_radius(32, 1.0);
        toygan::TrajectoryProfile a, b;
        const double ts = time_seconds([&] {
            a = toygan::discriminator_profile(g, d, prior, geometry::PathKind::Linear, 20000, 20,
                                              RngStream(5, 1), Exec::Serial);
        });
        const double tp = time_seconds([&] {
            b = toygan::discriminator_profile(g, d, prior, geometry::PathKind::Linear, 20000, 20,
                                              RngStream(5, 1), Exec::OpenMp);
        });
        report("discriminator profile (2e4 traj)", ts, tp,
               a.mean == b.mean && a.stddev == b.stddev);
    }
    return 0;
}
