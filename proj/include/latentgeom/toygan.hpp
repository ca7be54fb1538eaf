#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latentgeom/geometry.hpp"
#include "latentgeom/mlp.hpp"
#include "latentgeom/parallel.hpp"
#include "latentgeom/prior.hpp"

namespace latentgeom::toygan {

using parallel::Exec;
using priors::LatentPrior;
using priors::PriorFamily;

// Stream roles used by the trainer, exposed so callers can replay a phase
// (e.g. reproduce the exact initialization).
inline constexpr std::uint64_t kStreamInitGen = 1;
inline constexpr std::uint64_t kStreamInitDisc = 2;
inline constexpr std::uint64_t kStreamData = 3;
inline constexpr std::uint64_t kStreamLatent = 4;
inline constexpr std::uint64_t kStreamEval = 5;

// Desk-scale GAN: MLP generator/discriminator on a 2-D ring of 8 Gaussians
// (radius 2, component sigma 0.05), non-saturating loss, RMSProp.
struct GanConfig {
    LatentPrior prior = LatentPrior::gamma_radius(32, 1.0);
    std::vector<int> gen_hidden = {64, 64};
    std::vector<int> disc_hidden = {64, 64};
    double lr = 3e-4;
    double rms_decay = 0.9;
    int batch_size = 100;
    long train_steps = 5000;
    std::uint64_t seed = 0;
};

struct TrainReport {
    std::vector<double> d_losses;
    std::vector<double> g_losses;
    long steps = 0;
};

struct ToyGan {
    Mlp generator;
    Mlp discriminator;
    GanConfig config;
};

// One draw from the ring-of-8 dataset.
void sample_ring8(RngStream& rng, double* out);

ToyGan train_toy_gan(const GanConfig& cfg, TrainReport* report = nullptr);

LatentVector generate(const Mlp& generator, const LatentVector& z);
double discriminate(const Mlp& discriminator, std::span<const double> x);

// Fraction of held-out real samples scored > 1/2 plus fake samples scored
// <= 1/2, over 2n points.
double discriminator_accuracy(const ToyGan& gan, std::size_t n, RngStream& rng);

struct TrajectoryProfile {
    std::vector<double> ts;
    std::vector<double> mean;   // mean discriminator activation per t
    std::vector<double> stddev; // sample std per t
    std::size_t n_trajectories = 0;
    geometry::PathKind scheme = geometry::PathKind::Linear;
};

// D(G(h(t))) along sampled endpoint pairs, averaged per t. Chunked over
// trajectories with a fixed reduction order.
TrajectoryProfile discriminator_profile(const Mlp& generator, const Mlp& discriminator,
                                        const LatentPrior& prior, geometry::PathKind scheme,
                                        std::size_t n_trajectories, int n_steps,
                                        const RngStream& rng,
                                        Exec exec = parallel::default_exec());

// Endpoint-mean activation minus midpoint activation; the scalar behind the
// linear-traversal comparisons. Requires an even step grid.
double dip_depth(const TrajectoryProfile& profile);

struct SweepEntry {
    int dim = 0;
    PriorFamily family = PriorFamily::Normal;
    std::uint64_t seed = 0;
    double dip = 0.0;
    double endpoint_mean = 0.0;
    double midpoint_mean = 0.0;
};

// Trains one model per (dim, family, seed) and profiles a linear traversal.
// Models are independent, so they may run in parallel.
std::vector<SweepEntry> dimension_sweep(const GanConfig& base, const std::vector<int>& dims,
                                        const std::vector<PriorFamily>& families,
                                        const std::vector<std::uint64_t>& seeds,
                                        std::size_t n_trajectories, int n_steps,
                                        Exec exec = parallel::default_exec());

} // namespace latentgeom::toygan
