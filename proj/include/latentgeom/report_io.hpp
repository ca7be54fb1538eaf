#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "latentgeom/toygan.hpp"
#include "latentgeom/verify.hpp"

namespace latentgeom::io {

// CSV values are printed with 6 significant digits (stable golden files);
// JSON keeps full precision.
std::string format_sig6(double x);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// --- McReport ---------------------------------------------------------

inline constexpr const char* kMcReportCsvHeader =
    "quantity,estimate,std_error,n,seed,ks,claimed,verdict";

std::string mc_report_csv_row(const verify::McReport& report);
std::string mc_reports_csv(std::span<const verify::McReport> reports);
nlohmann::json mc_report_json(const verify::McReport& report);
nlohmann::json mc_reports_json(std::span<const verify::McReport> reports);

// --- Profiles ---------------------------------------------------------

std::string trajectory_profile_csv(const toygan::TrajectoryProfile& profile);
nlohmann::json trajectory_profile_json(const toygan::TrajectoryProfile& profile);

// mean/std of a quantity on a t grid (norm curves).
std::string t_curve_csv(std::span<const double> ts, std::span<const double> mean,
                        std::span<const double> stddev, const std::string& value_name);

// --- Checkpoints ------------------------------------------------------

nlohmann::json prior_json(const priors::LatentPrior& prior);
priors::LatentPrior prior_from_json(const nlohmann::json& j);

void save_checkpoint(const std::string& path, const toygan::ToyGan& gan);
toygan::ToyGan load_checkpoint(const std::string& path);

// --- SVG --------------------------------------------------------------

// Line plot of mean(t) with an optional +-1 std band; well-formed
// standalone SVG.
std::string svg_line_plot(std::span<const double> ts, std::span<const double> mean,
                          std::span<const double> stddev, const std::string& title,
                          const std::string& y_label);

} // namespace latentgeom::io
