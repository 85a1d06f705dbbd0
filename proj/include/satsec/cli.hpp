#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "satsec/mc.hpp"
#include "satsec/params.hpp"

namespace satsec::cli {

/// Malformed or invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kConfigError = 2, kNumericError = 3 };

struct Sweep {
    std::string path;  // dotted, e.g. "fso.P_R_dBW"
    std::vector<double> values;
};

struct ExperimentConfig {
    nlohmann::json doc;  // system sections, units in the field names
    SystemParams sys;
    std::optional<Sweep> sweep;
    mc::TrialConfig trials;
    std::string csv_path;  // empty = stdout
    int precision = 10;
};

/// Built-in parameter set with every field spelled out.
nlohmann::json default_system_json();

/// Read the system sections; unknown keys and wrong types are errors.
SystemParams system_from_json(const nlohmann::json& doc);

/// Copy of `doc` with the numeric field at `path` replaced.
nlohmann::json with_field(const nlohmann::json& doc, const std::string& path, double value);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// "fso.P_R_dBW=-10,0,10"
Sweep parse_sweep_arg(const std::string& arg);

/// One CSV field, printf-style %.{precision}e in the C locale.
std::string format_number(double v, int precision = 10);

struct AnalyticRow {
    double sweep_value;
    double sop1_lower;
    double op2;
    double phi;
    double sop_end_to_end;
};

/// Closed forms at each sweep value (a single row without a sweep).
std::vector<AnalyticRow> run_analytic(const ExperimentConfig& cfg);
void write_analytic_csv(std::ostream& os, const std::vector<AnalyticRow>& rows, int precision = 10);

struct SimulateRow {
    double sweep_value;
    std::string estimator;
    mc::Estimate est;
    std::uint64_t seed;
};

std::vector<SimulateRow> run_simulate(const ExperimentConfig& cfg);
void write_simulate_csv(std::ostream& os, const std::vector<SimulateRow>& rows, int precision = 10);

/// Seed for (point, estimator), derived from the configured seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t estimator);

struct ValidatePoint {
    double sweep_value = 0.0;
    double sop1_analytic = 0.0;
    mc::Estimate sop1_mc;
    mc::Comparison sop1_cmp;
    double op2_analytic = 0.0;
    mc::Estimate op2_mc;
    mc::Comparison op2_cmp;
    mc::Estimate sop1_exact_mc;
    bool bound_ok = true;  // exact >= lower - 4 sigma
    double runtime = 0.0;
    bool pass() const { return sop1_cmp.pass && op2_cmp.pass && bound_ok; }
};

/// Analytic-vs-MC cross-check. `lambda_r_fault` scales lambda_R on the analytic
/// side only, to prove the check can fail.
std::vector<ValidatePoint> run_validate(const ExperimentConfig& cfg, double lambda_r_fault = 1.0);
void write_validate_report(std::ostream& os, const std::vector<ValidatePoint>& pts);

/// One curve of a figure preset.
struct Curve {
    std::string name;
    nlohmann::json doc;
};

struct FigurePreset {
    int id = 0;
    std::string title;
    Sweep sweep;
    std::vector<Curve> curves;
    std::vector<std::string> notes;
};

/// Presets 4..8; throws ConfigError for other ids.
FigurePreset figure_preset(int id);

/// P_R grid shared by the presets, dBW.
std::vector<double> preset_power_sweep();

struct FigureOptions {
    std::string out_dir;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    bool with_mc = true;
};

/// Writes <out>/fig<id>_<curve>.csv and .meta.json per curve; returns the CSV paths.
std::vector<std::string> run_figures(int id, const FigureOptions& opt);

/// Entry point of the command-line tool.
int main_entry(int argc, char** argv);

}  // namespace satsec::cli
