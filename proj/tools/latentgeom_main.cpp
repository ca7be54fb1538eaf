// latentgeom: sampling, interpolation and verification tools for latent
// priors, plus the desk-scale GAN trainer behind the traversal experiments.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latentgeom/geometry.hpp"
#include "latentgeom/report_io.hpp"
#include "latentgeom/samplers.hpp"
#include "latentgeom/toygan.hpp"
#include "latentgeom/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace latentgeom;
using numerics::GammaParams;
using numerics::RngStream;
using priors::LatentPrior;
using verify::McReport;

namespace {

// Fixed stream ids per subcommand so runs are replayable.
constexpr std::uint64_t kStreamSample = 101;
constexpr std::uint64_t kStreamVerify = 102;
constexpr std::uint64_t kStreamKl = 103;
constexpr std::uint64_t kStreamTraverse = 104;
constexpr std::uint64_t kStreamLas = 105;

struct CommonOpts {
    std::string prior_family = "normal";
    int dim = 32;
    double sigma = 1.0;
    double theta = 1.0;
    std::uint64_t seed = 42;
    std::string out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};
};

LatentPrior make_prior(const CommonOpts& o) {
    if (o.prior_family == "normal") return LatentPrior::normal(o.dim, o.sigma);
    if (o.prior_family == "gamma") return LatentPrior::gamma_radius(o.dim, o.theta);
    throw InvalidConfig("unknown prior family: " + o.prior_family);
}

void add_prior_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--prior", o.prior_family, "prior family")
        ->check(CLI::IsMember({"normal", "gamma"}))
        ->capture_default_str();
    cmd->add_option("--dim", o.dim, "latent dimension")->capture_default_str();
    cmd->add_option("--sigma", o.sigma, "per-coordinate std of the normal prior")
        ->capture_default_str();
    cmd->add_option("--theta", o.theta, "scale of the gamma-radius squared-norm law")
        ->capture_default_str();
}

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "RNG seed")
        ->envname("LATENTGEOM_SEED")
        ->capture_default_str();
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--format", o.formats, "output formats (csv,json,svg)")
        ->delimiter(',')
        ->capture_default_str();
    cmd->fallthrough(); // lets --config reach the top-level app
}

bool wants(const CommonOpts& o, const std::string& fmt) {
    return std::find(o.formats.begin(), o.formats.end(), fmt) != o.formats.end();
}

fs::path out_path(const CommonOpts& o, const std::string& name) {
    fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + o.out_dir);
    return dir / name;
}

void emit(const CommonOpts& o, const std::string& stem, const std::string& csv,
          const json& mirror) {
    if (wants(o, "csv")) io::write_text_file(out_path(o, stem + ".csv").string(), csv);
    if (wants(o, "json"))
        io::write_text_file(out_path(o, stem + ".json").string(), mirror.dump(2) + "\n");
}

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::ostringstream os;
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    return os.str();
}

// --- sample -----------------------------------------------------------

int cmd_sample(const CommonOpts& o, std::size_t n) {
    const LatentPrior prior = make_prior(o);
    RngStream rng(o.seed, kStreamSample);

    std::ostringstream csv;
    for (int i = 0; i < prior.d; ++i) csv << (i ? "," : "") << 'z' << i;
    csv << '\n';

    parallel::KahanSum sum, sum2;
    json vectors = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const LatentVector z = priors::sample(prior, rng);
        for (std::size_t k = 0; k < z.size(); ++k)
            csv << (k ? "," : "") << io::format_sig6(z[k]);
        csv << '\n';
        const double sq = squared_norm(z);
        sum.add(sq);
        sum2.add(sq * sq);
        if (wants(o, "json")) vectors.push_back(z);
    }
    const double mean = sum.value() / double(n);
    const double var = n > 1 ? (sum2.value() - double(n) * mean * mean) / double(n - 1) : 0.0;

    if (wants(o, "csv"))
        io::write_text_file(out_path(o, "samples.csv").string(), csv.str());

    std::ostringstream summary;
    summary << "n,dim,mean_sqnorm,var_sqnorm\n"
            << n << ',' << prior.d << ',' << io::format_sig6(mean) << ','
            << io::format_sig6(var) << '\n';
    if (wants(o, "csv"))
        io::write_text_file(out_path(o, "sample_summary.csv").string(), summary.str());

    if (wants(o, "json")) {
        json j{{"prior", io::prior_json(prior)},
               {"seed", o.seed},
               {"n", n},
               {"mean_sqnorm", mean},
               {"var_sqnorm", var},
               {"vectors", vectors}};
        io::write_text_file(out_path(o, "samples.json").string(), j.dump(2) + "\n");
    }
    std::cout << "wrote " << n << " samples; mean ||z||^2 = " << io::format_sig6(mean) << "\n";
    return 0;
}

// --- kl ---------------------------------------------------------------

int cmd_kl(const CommonOpts& o, std::size_t n, bool write_files) {
    const LatentPrior prior = make_prior(o);
    const double closed = priors::prior_midpoint_kl(prior);
    const GammaParams endpoint = priors::squared_norm_distribution(prior);
    const priors::MidpointLaw midpoint = priors::midpoint_squared_norm_distribution(prior);
    const McReport mc =
        verify::mc_kl_estimate(endpoint, midpoint.params, n, RngStream(o.seed, kStreamKl));

    const bool gamma_family = prior.family == priors::PriorFamily::GammaRadius;
    const std::string verdict =
        gamma_family ? "Informational" : verify::verdict_name(mc.verdict);

    std::cout << "closed_form_nats " << io::format_sig6(closed) << "\n"
              << "mc_estimate_nats " << io::format_sig6(mc.estimate) << " +- "
              << io::format_sig6(mc.std_error) << "\n"
              << "verdict " << verdict << "\n";

    if (write_files) {
        const std::vector<std::pair<std::string, std::string>> rows = {
            {"closed_form_nats", io::format_sig6(closed)},
            {"mc_estimate_nats", io::format_sig6(mc.estimate)},
            {"mc_std_error", io::format_sig6(mc.std_error)},
            {"mc_n", std::to_string(n)},
            {"verdict", verdict}};
        json j{{"prior", io::prior_json(prior)},
               {"closed_form_nats", closed},
               {"mc", io::mc_report_json(mc)},
               {"verdict", verdict}};
        emit(o, "kl", key_value_csv(rows), j);
    }
    if (gamma_family) return 0;
    return mc.verdict == verify::Verdict::Consistent ? 0 : 1;
}

// --- mc-verify --------------------------------------------------------

int cmd_mc_verify(const CommonOpts& o, std::size_t n, std::size_t pairs) {
    const LatentPrior prior = make_prior(o);
    const RngStream rng(o.seed, kStreamVerify);

    std::vector<McReport> reports = verify::mc_endpoint_check(prior, n, rng);
    reports.push_back(verify::mc_midpoint_check(prior, pairs, rng.split(1)));
    const GammaParams endpoint = priors::squared_norm_distribution(prior);
    const priors::MidpointLaw midpoint = priors::midpoint_squared_norm_distribution(prior);
    reports.push_back(verify::mc_kl_estimate(endpoint, midpoint.params,
                                             std::max<std::size_t>(n, 10000), rng.split(2)));

    emit(o, "mc_report", io::mc_reports_csv(reports), io::mc_reports_json(reports));

    bool inconsistent = false;
    for (const auto& r : reports) {
        std::cout << io::mc_report_csv_row(r) << "\n";
        inconsistent = inconsistent || r.verdict == verify::Verdict::Inconsistent;
    }
    return inconsistent ? 1 : 0;
}

// --- traverse ---------------------------------------------------------

int cmd_traverse(const CommonOpts& o, const std::string& checkpoint, const std::string& scheme,
                 std::size_t pairs, int steps) {
    const geometry::PathKind kind =
        scheme == "slerp" ? geometry::PathKind::Spherical : geometry::PathKind::Linear;

    if (!checkpoint.empty()) {
        const toygan::ToyGan gan = io::load_checkpoint(checkpoint);
        const toygan::TrajectoryProfile profile = toygan::discriminator_profile(
            gan.generator, gan.discriminator, gan.config.prior, kind, pairs, steps,
            RngStream(o.seed, kStreamTraverse));
        emit(o, "traverse_activation", io::trajectory_profile_csv(profile),
             io::trajectory_profile_json(profile));
        if (wants(o, "svg"))
            io::write_text_file(out_path(o, "traverse_activation.svg").string(),
                                io::svg_line_plot(profile.ts, profile.mean, profile.stddev,
                                                  "discriminator activation (" + scheme + ")",
                                                  "D(G(h(t)))"));
        std::cout << "midpoint mean activation " << io::format_sig6(profile.mean[profile.mean.size() / 2])
                  << "\n";
        return 0;
    }

    // Norm-only mode: average ||h(t)|| over sampled endpoint pairs.
    const LatentPrior prior = make_prior(o);
    RngStream rng(o.seed, kStreamTraverse);
    const std::size_t n_points = std::size_t(steps) + 1;
    std::vector<double> ts(n_points), sum(n_points, 0.0), sum2(n_points, 0.0);
    for (std::size_t i = 0; i < n_points; ++i) ts[i] = double(i) / double(steps);

    parallel::KahanSum ratio_sum;
    for (std::size_t p = 0; p < pairs; ++p) {
        geometry::Path path{kind, {}, {}};
        for (int attempt = 0;; ++attempt) {
            path.z0 = priors::sample(prior, rng);
            path.z1 = priors::sample(prior, rng);
            try {
                (void)path.at(0.5);
                break;
            } catch (const DegenerateAngle&) {
                if (attempt > 100) throw;
            }
        }
        for (std::size_t i = 0; i < n_points; ++i) {
            const double nm = norm(path.at(ts[i]));
            sum[i] += nm;
            sum2[i] += nm * nm;
        }
        ratio_sum.add(geometry::path_profile(path, steps).midpoint_norm_ratio);
    }
    std::vector<double> mean(n_points), stddev(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        mean[i] = sum[i] / double(pairs);
        const double var =
            pairs > 1
                ? std::max(0.0, (sum2[i] - double(pairs) * mean[i] * mean[i]) / double(pairs - 1))
                : 0.0;
        stddev[i] = std::sqrt(var);
    }
    const double mean_ratio = ratio_sum.value() / double(pairs);

    emit(o, "traverse_norms", io::t_curve_csv(ts, mean, stddev, "norm"),
         json{{"prior", io::prior_json(prior)},
              {"scheme", scheme},
              {"pairs", pairs},
              {"t", ts},
              {"mean_norm", mean},
              {"std_norm", stddev},
              {"mean_midpoint_norm_ratio", mean_ratio}});
    if (wants(o, "csv"))
        io::write_text_file(
            out_path(o, "traverse_summary.csv").string(),
            key_value_csv({{"mean_midpoint_norm_ratio", io::format_sig6(mean_ratio)}}));
    if (wants(o, "svg"))
        io::write_text_file(out_path(o, "traverse_norms.svg").string(),
                            io::svg_line_plot(ts, mean, stddev, "path norm (" + scheme + ")",
                                              "||h(t)||"));
    std::cout << "mean midpoint norm ratio " << io::format_sig6(mean_ratio) << "\n";
    return 0;
}

// --- train-toy --------------------------------------------------------

int cmd_train_toy(const CommonOpts& o, long steps, int batch, double lr, double decay) {
    toygan::GanConfig cfg;
    cfg.prior = make_prior(o);
    cfg.train_steps = steps;
    cfg.batch_size = batch;
    cfg.lr = lr;
    cfg.rms_decay = decay;
    cfg.seed = o.seed;

    toygan::TrainReport report;
    const toygan::ToyGan gan = toygan::train_toy_gan(cfg, &report);

    io::save_checkpoint(out_path(o, "checkpoint.json").string(), gan);
    std::ostringstream losses;
    losses << "step,d_loss,g_loss\n";
    for (std::size_t i = 0; i < report.d_losses.size(); ++i)
        losses << i << ',' << io::format_sig6(report.d_losses[i]) << ','
               << io::format_sig6(report.g_losses[i]) << '\n';
    if (wants(o, "csv")) io::write_text_file(out_path(o, "losses.csv").string(), losses.str());

    RngStream eval(o.seed, toygan::kStreamEval);
    const double acc = toygan::discriminator_accuracy(gan, 2000, eval);
    std::cout << "trained " << steps << " steps; discriminator accuracy "
              << io::format_sig6(acc) << "\n";
    return 0;
}

// --- las --------------------------------------------------------------

std::vector<verify::AttributeGroups> load_groups_csv(const std::string& path, int n_attributes) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    const std::size_t n_pairs = std::size_t(n_attributes) * std::size_t(n_attributes - 1) / 2;
    std::vector<verify::AttributeGroups> groups(n_pairs);
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("las input: empty file");
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string field;
        std::size_t pair = 0;
        std::string label;
        LatentVector z;
        try {
            std::getline(ss, field, ',');
            pair = std::stoul(field);
            std::getline(ss, label, ',');
            while (std::getline(ss, field, ',')) z.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw InvalidConfig("las input: malformed row " + std::to_string(row));
        }
        if (pair >= n_pairs) throw InvalidConfig("las input: pair index out of range");
        if (z.empty()) throw InvalidConfig("las input: vector missing at row " + std::to_string(row));
        auto& g = groups[pair];
        if (label == "AB")
            g.with_both.push_back(std::move(z));
        else if (label == "aB")
            g.second_only.push_back(std::move(z));
        else if (label == "ab")
            g.with_neither.push_back(std::move(z));
        else if (label == "Ab")
            g.first_only.push_back(std::move(z));
        else
            throw InvalidConfig("las input: unknown group label " + label);
    }
    return groups;
}

int cmd_las(const CommonOpts& o, int n_attributes, int group_size, double noise,
            bool per_pair_norm, const std::string& input) {
    std::vector<verify::AttributeGroups> groups;
    if (!input.empty()) {
        groups = load_groups_csv(input, n_attributes);
    } else {
        RngStream rng(o.seed, kStreamLas);
        groups = verify::synthetic_attribute_groups(n_attributes, o.dim, group_size, noise, rng);
    }
    const auto normalization = per_pair_norm ? verify::LasNormalization::PerPair
                                             : verify::LasNormalization::Global;
    const double las = verify::latent_algebra_score(groups, n_attributes, normalization);

    emit(o, "las",
         key_value_csv({{"las", io::format_sig6(las)},
                        {"n_attributes", std::to_string(n_attributes)},
                        {"normalization", per_pair_norm ? "per_pair" : "global"}}),
         json{{"las", las},
              {"n_attributes", n_attributes},
              {"normalization", per_pair_norm ? "per_pair" : "global"}});
    std::cout << "LAS " << io::format_sig6(las) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latentgeom: latent prior geometry toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "config file ([subcommand] sections, key=value lines; flags win)");

    CommonOpts opts;
    std::size_t n = 1000;
    std::size_t verify_n = 100000;
    std::size_t verify_pairs = 100000;
    std::size_t pairs = 1000;
    int steps = 20;
    long train_steps = 5000;
    int batch = 100;
    double lr = 3e-4, decay = 0.9;
    std::string checkpoint, scheme = "linear", las_input;
    int n_attributes = 4, group_size = 256;
    double las_noise = 0.01;
    bool per_pair_norm = false;

    CLI::App* c_sample = app.add_subcommand("sample", "draw latent vectors and summarize norms");
    add_prior_flags(c_sample, opts);
    add_common_flags(c_sample, opts);
    c_sample->add_option("--n", n, "number of samples")->capture_default_str();

    CLI::App* c_kl = app.add_subcommand("kl", "endpoint vs midpoint KL, closed form and MC");
    add_prior_flags(c_kl, opts);
    add_common_flags(c_kl, opts);
    std::size_t kl_n = 1000000;
    c_kl->add_option("--n", kl_n, "MC sample count")->capture_default_str();

    CLI::App* c_verify = app.add_subcommand("mc-verify", "endpoint, midpoint and KL checks");
    add_prior_flags(c_verify, opts);
    add_common_flags(c_verify, opts);
    c_verify->add_option("--n", verify_n, "endpoint sample count")->capture_default_str();
    c_verify->add_option("--pairs", verify_pairs, "midpoint pair count")->capture_default_str();

    CLI::App* c_traverse = app.add_subcommand(
        "traverse", "norm curves, or discriminator activation with a checkpoint");
    add_prior_flags(c_traverse, opts);
    add_common_flags(c_traverse, opts);
    c_traverse->add_option("--checkpoint", checkpoint, "trained model checkpoint");
    c_traverse->add_option("--scheme", scheme, "interpolation scheme")
        ->check(CLI::IsMember({"linear", "slerp"}))
        ->capture_default_str();
    c_traverse->add_option("--pairs", pairs, "endpoint pairs / trajectories")
        ->capture_default_str();
    c_traverse->add_option("--steps", steps, "grid steps")->capture_default_str();

    CLI::App* c_train = app.add_subcommand("train-toy", "train the toy GAN on the ring dataset");
    add_prior_flags(c_train, opts);
    add_common_flags(c_train, opts);
    c_train->add_option("--steps", train_steps, "training steps")->capture_default_str();
    c_train->add_option("--batch", batch, "batch size")->capture_default_str();
    c_train->add_option("--lr", lr, "RMSProp learning rate")->capture_default_str();
    c_train->add_option("--decay", decay, "RMSProp decay")->capture_default_str();

    CLI::App* c_las = app.add_subcommand("las", "latent algebra score on attribute groups");
    add_prior_flags(c_las, opts);
    add_common_flags(c_las, opts);
    c_las->add_option("--attributes", n_attributes, "number of binary attributes")
        ->capture_default_str();
    c_las->add_option("--group-size", group_size, "vectors per group")->capture_default_str();
    c_las->add_option("--noise", las_noise, "noise sigma of the synthetic construction")
        ->capture_default_str();
    c_las->add_flag("--per-pair-norm", per_pair_norm,
                    "normalize by each pair's own mean squared norm");
    c_las->add_option("--input", las_input, "CSV of labeled latent vectors (pair,group,z0..)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_sample->parsed()) return cmd_sample(opts, n);
        if (c_kl->parsed()) return cmd_kl(opts, kl_n, c_kl->count("--out") > 0);
        if (c_verify->parsed()) return cmd_mc_verify(opts, verify_n, verify_pairs);
        if (c_traverse->parsed()) return cmd_traverse(opts, checkpoint, scheme, pairs, steps);
        if (c_train->parsed()) return cmd_train_toy(opts, train_steps, batch, lr, decay);
        if (c_las->parsed())
            return cmd_las(opts, n_attributes, group_size, las_noise, per_pair_norm, las_input);
    } catch (const InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CheckpointMissing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
