#include "latentgeom/toygan.hpp"

#include <cmath>

#include "latentgeom/errors.hpp"
#include "latentgeom/samplers.hpp"

namespace latentgeom::toygan {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kRingRadius = 2.0;
constexpr double kRingSigma = 0.15;
constexpr int kRingModes = 8;

std::vector<int> widths_for(int in, const std::vector<int>& hidden, int out) {
    std::vector<int> w;
    w.push_back(in);
    w.insert(w.end(), hidden.begin(), hidden.end());
    w.push_back(out);
    return w;
}

std::vector<Activation> activations_for(std::size_t n_layers, Activation hidden,
                                        Activation last) {
    std::vector<Activation> acts(n_layers, hidden);
    acts.back() = last;
    return acts;
}

void fill_real_batch(RngStream& rng, int batch, std::vector<double>& out) {
    out.resize(std::size_t(batch) * 2);
    for (int s = 0; s < batch; ++s) sample_ring8(rng, out.data() + std::size_t(s) * 2);
}

void fill_latent_batch(const LatentPrior& prior, RngStream& rng, int batch,
                       std::vector<double>& out) {
    const std::size_t d = std::size_t(prior.d);
    out.resize(std::size_t(batch) * d);
    for (int s = 0; s < batch; ++s) {
        const LatentVector z = priors::sample(prior, rng);
        std::copy(z.begin(), z.end(), out.begin() + std::size_t(s) * d);
    }
}

} // namespace

void sample_ring8(RngStream& rng, double* out) {
    const int mode = int(rng.uniform() * kRingModes) % kRingModes;
    const double angle = kTwoPi * double(mode) / double(kRingModes);
    out[0] = kRingRadius * std::cos(angle) + kRingSigma * rng.normal();
    out[1] = kRingRadius * std::sin(angle) + kRingSigma * rng.normal();
}

ToyGan train_toy_gan(const GanConfig& cfg, TrainReport* report) {
    if (cfg.batch_size < 2) throw InvalidConfig("train_toy_gan: batch_size must be >= 2");
    if (!(cfg.lr > 0.0)) throw InvalidConfig("train_toy_gan: lr must be positive");
    if (cfg.train_steps < 0) throw InvalidConfig("train_toy_gan: negative train_steps");

    RngStream init_g(cfg.seed, kStreamInitGen);
    RngStream init_d(cfg.seed, kStreamInitDisc);
    RngStream data_rng(cfg.seed, kStreamData);
    RngStream z_rng(cfg.seed, kStreamLatent);

    ToyGan gan;
    gan.config = cfg;
    // Per-coordinate RMS of the prior, E||z||^2 = d * rms^2.
    const double input_rms =
        std::sqrt(priors::squared_norm_distribution(cfg.prior).mean() / double(cfg.prior.d));
    gan.generator = Mlp::create(
        widths_for(cfg.prior.d, cfg.gen_hidden, 2),
        activations_for(cfg.gen_hidden.size() + 1, Activation::ReLU, Activation::Identity),
        init_g, input_rms);
    gan.discriminator = Mlp::create(
        widths_for(2, cfg.disc_hidden, 1),
        activations_for(cfg.disc_hidden.size() + 1, Activation::LeakyReLU, Activation::Sigmoid),
        init_d);

    RmsProp opt_g{cfg.lr, cfg.rms_decay};
    RmsProp opt_d{cfg.lr, cfg.rms_decay};
    opt_g.init(gan.generator);
    opt_d.init(gan.discriminator);

    Gradients grads_g = Gradients::zeros_like(gan.generator);
    Gradients grads_d = Gradients::zeros_like(gan.discriminator);
    Gradients scratch_d = Gradients::zeros_like(gan.discriminator);

    const int batch = cfg.batch_size;
    const double inv_batch = 1.0 / double(batch);
    std::vector<double> x_real, z_batch, x_fake, delta, input_grad;
    ForwardCache cache_g, cache_d;

    if (report) {
        report->d_losses.clear();
        report->g_losses.clear();
        report->steps = cfg.train_steps;
    }

    auto bce_against = [&](const std::vector<double>& y, double target) {
        double loss = 0.0;
        for (double v : y)
            loss -= target > 0.5 ? std::log(std::max(v, 1e-12))
                                 : std::log(std::max(1.0 - v, 1e-12));
        return loss * inv_batch;
    };

    for (long step = 0; step < cfg.train_steps; ++step) {
        // Discriminator update: real batch toward 1, fresh fakes toward 0.
        grads_d.clear();
        fill_real_batch(data_rng, batch, x_real);
        forward(gan.discriminator, x_real, batch, cache_d);
        double d_loss = bce_against(cache_d.post.back(), 1.0);
        delta = cache_d.post.back();
        for (auto& v : delta) v = (v - 1.0) * inv_batch;
        backward(gan.discriminator, x_real, batch, cache_d, std::move(delta), true, grads_d,
                 nullptr);

        fill_latent_batch(cfg.prior, z_rng, batch, z_batch);
        forward(gan.generator, z_batch, batch, cache_g);
        x_fake = cache_g.post.back();
        forward(gan.discriminator, x_fake, batch, cache_d);
        d_loss += bce_against(cache_d.post.back(), 0.0);
        delta = cache_d.post.back();
        for (auto& v : delta) v *= inv_batch;
        backward(gan.discriminator, x_fake, batch, cache_d, std::move(delta), true, grads_d,
                 nullptr);
        opt_d.step(gan.discriminator, grads_d);

        // Generator update with the non-saturating loss -log D(G(z)).
        grads_g.clear();
        scratch_d.clear();
        fill_latent_batch(cfg.prior, z_rng, batch, z_batch);
        forward(gan.generator, z_batch, batch, cache_g);
        x_fake = cache_g.post.back();
        forward(gan.discriminator, x_fake, batch, cache_d);
        const double g_loss = bce_against(cache_d.post.back(), 1.0);
        delta = cache_d.post.back();
        for (auto& v : delta) v = (v - 1.0) * inv_batch;
        backward(gan.discriminator, x_fake, batch, cache_d, std::move(delta), true, scratch_d,
                 &input_grad);
        backward(gan.generator, z_batch, batch, cache_g, std::move(input_grad), false, grads_g,
                 nullptr);
        opt_g.step(gan.generator, grads_g);

        if (!std::isfinite(d_loss) || !std::isfinite(g_loss))
            throw DivergenceDetected("train_toy_gan: non-finite loss", step);
        if (step % 250 == 249 &&
            (!gan.generator.parameters_finite() || !gan.discriminator.parameters_finite()))
            throw DivergenceDetected("train_toy_gan: non-finite parameters", step);

        if (report) {
            report->d_losses.push_back(d_loss);
            report->g_losses.push_back(g_loss);
        }
    }
    return gan;
}

LatentVector generate(const Mlp& generator, const LatentVector& z) {
    return forward_one(generator, z);
}

double discriminate(const Mlp& discriminator, std::span<const double> x) {
    return forward_one(discriminator, x)[0];
}

double discriminator_accuracy(const ToyGan& gan, std::size_t n, RngStream& rng) {
    std::size_t correct = 0;
    double point[2];
    for (std::size_t i = 0; i < n; ++i) {
        sample_ring8(rng, point);
        if (discriminate(gan.discriminator, std::span<const double>(point, 2)) > 0.5) ++correct;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const LatentVector z = priors::sample(gan.config.prior, rng);
        const LatentVector x = generate(gan.generator, z);
        if (discriminate(gan.discriminator, x) <= 0.5) ++correct;
    }
    return double(correct) / double(2 * n);
}

TrajectoryProfile discriminator_profile(const Mlp& generator, const Mlp& discriminator,
                                        const LatentPrior& prior, geometry::PathKind scheme,
                                        std::size_t n_trajectories, int n_steps,
                                        const RngStream& rng, Exec exec) {
    if (n_trajectories < 1) throw InvalidConfig("discriminator_profile: need trajectories");
    if (n_steps < 2) throw InvalidConfig("discriminator_profile: n_steps must be >= 2");

    const std::size_t n_points = std::size_t(n_steps) + 1;
    const int n_chunks = parallel::kDefaultChunks;
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(n_chunks));
    std::vector<std::vector<double>> sums2(static_cast<std::size_t>(n_chunks));

    parallel::for_each_chunk(
        n_trajectories, n_chunks, exec, [&](int chunk, std::size_t begin, std::size_t end) {
            RngStream local = rng.split(std::uint64_t(chunk));
            auto& sum = sums[std::size_t(chunk)];
            auto& sum2 = sums2[std::size_t(chunk)];
            sum.assign(n_points, 0.0);
            sum2.assign(n_points, 0.0);
            for (std::size_t traj = begin; traj < end; ++traj) {
                geometry::Path path{scheme, {}, {}};
                // Antipodal draws make the spherical path ill-defined; redraw.
                for (int attempt = 0;; ++attempt) {
                    path.z0 = priors::sample(prior, local);
                    path.z1 = priors::sample(prior, local);
                    try {
                        (void)path.at(0.5);
                        break;
                    } catch (const DegenerateAngle&) {
                        if (attempt > 100) throw;
                    }
                }
                for (std::size_t i = 0; i < n_points; ++i) {
                    const double t = double(i) / double(n_steps);
                    const LatentVector x = forward_one(generator, path.at(t));
                    const double a = forward_one(discriminator, x)[0];
                    sum[i] += a;
                    sum2[i] += a * a;
                }
            }
        });

    TrajectoryProfile profile;
    profile.scheme = scheme;
    profile.n_trajectories = n_trajectories;
    profile.ts.resize(n_points);
    profile.mean.resize(n_points);
    profile.stddev.resize(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        parallel::KahanSum s, s2;
        for (int c = 0; c < n_chunks; ++c) {
            s.add(sums[std::size_t(c)][i]);
            s2.add(sums2[std::size_t(c)][i]);
        }
        const double n = double(n_trajectories);
        const double mean = s.value() / n;
        const double var =
            n > 1.0 ? std::max(0.0, (s2.value() - n * mean * mean) / (n - 1.0)) : 0.0;
        profile.ts[i] = double(i) / double(n_steps);
        profile.mean[i] = mean;
        profile.stddev[i] = std::sqrt(var);
    }
    return profile;
}

double dip_depth(const TrajectoryProfile& profile) {
    const std::size_t n = profile.ts.size();
    if (n < 3 || n % 2 == 0)
        throw InvalidConfig("dip_depth: need an even step grid so t=1/2 is on it");
    const double endpoint = 0.5 * (profile.mean.front() + profile.mean.back());
    return endpoint - profile.mean[n / 2];
}

std::vector<SweepEntry> dimension_sweep(const GanConfig& base, const std::vector<int>& dims,
                                        const std::vector<PriorFamily>& families,
                                        const std::vector<std::uint64_t>& seeds,
                                        std::size_t n_trajectories, int n_steps, Exec exec) {
    if (dims.empty()) throw InvalidConfig("dimension_sweep: dims must be non-empty");

    struct Job {
        int dim;
        PriorFamily family;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int dim : dims)
        for (PriorFamily family : families)
            for (std::uint64_t seed : seeds) jobs.push_back({dim, family, seed});

    std::vector<SweepEntry> entries(jobs.size());
    const auto run_job = [&](std::size_t j) {
        const Job& job = jobs[j];
        GanConfig cfg = base;
        cfg.prior = job.family == PriorFamily::Normal
                        ? LatentPrior::normal(job.dim, base.prior.scale_param)
                        : LatentPrior::gamma_radius(job.dim, base.prior.scale_param);
        cfg.seed = job.seed;
        const ToyGan gan = train_toy_gan(cfg);
        const TrajectoryProfile profile = discriminator_profile(
            gan.generator, gan.discriminator, cfg.prior, geometry::PathKind::Linear,
            n_trajectories, n_steps, RngStream(job.seed, kStreamEval), Exec::Serial);
        SweepEntry e;
        e.dim = job.dim;
        e.family = job.family;
        e.seed = job.seed;
        e.dip = dip_depth(profile);
        e.endpoint_mean = 0.5 * (profile.mean.front() + profile.mean.back());
        e.midpoint_mean = profile.mean[profile.mean.size() / 2];
        entries[j] = e;
    };

    if (exec == Exec::OpenMp) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
#else
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
#endif
    } else {
        for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
    }
    return entries;
}

} // namespace latentgeom::toygan
