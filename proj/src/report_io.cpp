#include "latentgeom/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latentgeom::io {

using nlohmann::json;

std::string format_sig6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string mc_report_csv_row(const verify::McReport& r) {
    std::ostringstream os;
    os << r.quantity << ',' << format_sig6(r.estimate) << ',' << format_sig6(r.std_error) << ','
       << r.n_samples << ',' << r.seed << ',';
    if (r.ks_statistic) os << format_sig6(*r.ks_statistic);
    os << ',';
    if (r.claimed_value) os << format_sig6(*r.claimed_value);
    os << ',' << verify::verdict_name(r.verdict);
    return os.str();
}

std::string mc_reports_csv(std::span<const verify::McReport> reports) {
    std::ostringstream os;
    os << kMcReportCsvHeader << '\n';
    for (const auto& r : reports) os << mc_report_csv_row(r) << '\n';
    return os.str();
}

json mc_report_json(const verify::McReport& r) {
    json j{{"quantity", r.quantity},
           {"estimate", r.estimate},
           {"std_error", r.std_error},
           {"n", r.n_samples},
           {"seed", r.seed},
           {"verdict", verify::verdict_name(r.verdict)}};
    j["ks"] = r.ks_statistic ? json(*r.ks_statistic) : json(nullptr);
    j["claimed"] = r.claimed_value ? json(*r.claimed_value) : json(nullptr);
    return j;
}

json mc_reports_json(std::span<const verify::McReport> reports) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(mc_report_json(r));
    return arr;
}

std::string trajectory_profile_csv(const toygan::TrajectoryProfile& profile) {
    std::ostringstream os;
    os << "t,mean,std\n";
    for (std::size_t i = 0; i < profile.ts.size(); ++i)
        os << format_sig6(profile.ts[i]) << ',' << format_sig6(profile.mean[i]) << ','
           << format_sig6(profile.stddev[i]) << '\n';
    return os.str();
}

json trajectory_profile_json(const toygan::TrajectoryProfile& profile) {
    return json{{"scheme", profile.scheme == geometry::PathKind::Linear ? "linear" : "slerp"},
                {"n_trajectories", profile.n_trajectories},
                {"t", profile.ts},
                {"mean", profile.mean},
                {"std", profile.stddev}};
}

std::string t_curve_csv(std::span<const double> ts, std::span<const double> mean,
                        std::span<const double> stddev, const std::string& value_name) {
    std::ostringstream os;
    os << "t,mean_" << value_name << ",std_" << value_name << '\n';
    for (std::size_t i = 0; i < ts.size(); ++i)
        os << format_sig6(ts[i]) << ',' << format_sig6(mean[i]) << ','
           << format_sig6(stddev[i]) << '\n';
    return os.str();
}

json prior_json(const priors::LatentPrior& prior) {
    return json{{"family", prior.family_name()}, {"d", prior.d}, {"scale", prior.scale_param}};
}

priors::LatentPrior prior_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const int d = j.at("d").get<int>();
    const double scale = j.at("scale").get<double>();
    if (family == "normal") return priors::LatentPrior::normal(d, scale);
    if (family == "gamma") return priors::LatentPrior::gamma_radius(d, scale);
    throw InvalidConfig("unknown prior family: " + family);
}

namespace {

json mlp_json(const toygan::Mlp& mlp) {
    json layers = json::array();
    for (const auto& l : mlp.layers)
        layers.push_back(json{{"in", l.in},
                              {"out", l.out},
                              {"activation", toygan::activation_name(l.act)},
                              {"weights", l.w},
                              {"biases", l.b}});
    return json{{"layers", layers}};
}

toygan::Mlp mlp_from_json(const json& j) {
    toygan::Mlp mlp;
    for (const auto& jl : j.at("layers")) {
        toygan::Layer l;
        l.in = jl.at("in").get<int>();
        l.out = jl.at("out").get<int>();
        l.act = toygan::activation_from_name(jl.at("activation").get<std::string>());
        l.w = jl.at("weights").get<std::vector<double>>();
        l.b = jl.at("biases").get<std::vector<double>>();
        if (l.w.size() != std::size_t(l.in) * std::size_t(l.out) ||
            l.b.size() != std::size_t(l.out))
            throw InvalidConfig("checkpoint: layer shape mismatch");
        mlp.layers.push_back(std::move(l));
    }
    if (mlp.layers.empty()) throw InvalidConfig("checkpoint: empty network");
    return mlp;
}

} // namespace

void save_checkpoint(const std::string& path, const toygan::ToyGan& gan) {
    json j{{"format", "latentgeom-checkpoint-v1"},
           {"config",
            {{"prior", prior_json(gan.config.prior)},
             {"gen_hidden", gan.config.gen_hidden},
             {"disc_hidden", gan.config.disc_hidden},
             {"lr", gan.config.lr},
             {"rms_decay", gan.config.rms_decay},
             {"batch_size", gan.config.batch_size},
             {"train_steps", gan.config.train_steps},
             {"seed", gan.config.seed}}},
           {"generator", mlp_json(gan.generator)},
           {"discriminator", mlp_json(gan.discriminator)}};
    write_text_file(path, j.dump(2) + "\n");
}

toygan::ToyGan load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointMissing("checkpoint not found: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidConfig("checkpoint parse error: " + std::string(e.what()));
    }
    if (j.value("format", "") != "latentgeom-checkpoint-v1")
        throw InvalidConfig("checkpoint: unknown format tag");

    toygan::ToyGan gan;
    const json& cfg = j.at("config");
    gan.config.prior = prior_from_json(cfg.at("prior"));
    gan.config.gen_hidden = cfg.at("gen_hidden").get<std::vector<int>>();
    gan.config.disc_hidden = cfg.at("disc_hidden").get<std::vector<int>>();
    gan.config.lr = cfg.at("lr").get<double>();
    gan.config.rms_decay = cfg.at("rms_decay").get<double>();
    gan.config.batch_size = cfg.at("batch_size").get<int>();
    gan.config.train_steps = cfg.at("train_steps").get<long>();
    gan.config.seed = cfg.at("seed").get<std::uint64_t>();
    gan.generator = mlp_from_json(j.at("generator"));
    gan.discriminator = mlp_from_json(j.at("discriminator"));
    if (gan.generator.input_dim() != gan.config.prior.d)
        throw InvalidConfig("checkpoint: generator width does not match prior dimension");
    return gan;
}

std::string svg_line_plot(std::span<const double> ts, std::span<const double> mean,
                          std::span<const double> stddev, const std::string& title,
                          const std::string& y_label) {
    const int width = 640, height = 400;
    const int ml = 60, mr = 20, mt = 30, mb = 45;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double ymin = mean[0], ymax = mean[0];
    for (std::size_t i = 0; i < mean.size(); ++i) {
        const double s = stddev.empty() ? 0.0 : stddev[i];
        ymin = std::min(ymin, mean[i] - s);
        ymax = std::max(ymax, mean[i] + s);
    }
    if (ymax - ymin < 1e-12) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double t) { return ml + t * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };
    auto num = [&](double v) { return format_sig6(v); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    if (!stddev.empty()) {
        os << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
        for (std::size_t i = 0; i < ts.size(); ++i)
            os << num(px(ts[i])) << ',' << num(py(mean[i] + stddev[i])) << ' ';
        for (std::size_t i = ts.size(); i-- > 0;)
            os << num(px(ts[i])) << ',' << num(py(mean[i] - stddev[i])) << ' ';
        os << "\"/>\n";
    }

    os << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < ts.size(); ++i)
        os << num(px(ts[i])) << ',' << num(py(mean[i])) << ' ';
    os << "\"/>\n";

    // axes
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double t = 0.25 * i;
        os << "<text x=\"" << num(px(t)) << "\" y=\"" << mt + ph + 18
           << "\" font-size=\"11\" text-anchor=\"middle\">" << num(t) << "</text>\n";
        const double y = ymin + (ymax - ymin) * 0.25 * i;
        os << "<text x=\"" << ml - 6 << "\" y=\"" << num(py(y) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << num(y) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 8
       << "\" font-size=\"12\" text-anchor=\"middle\">t</text>\n"
       << "<text x=\"14\" y=\"" << mt + ph / 2
       << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
       << mt + ph / 2 << ")\">" << y_label << "</text>\n"
       << "<text x=\"" << width / 2 << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">"
       << title << "</text>\n</svg>\n";
    return os.str();
}

} // namespace latentgeom::io
