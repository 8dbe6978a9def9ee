#pragma once

#include "fracinv/forward.hpp"
#include "fracinv/inverse.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fracinv::experiment {

enum class SourceProfile { paper_sine_bump, custom_samples };
enum class TrueSource { smooth_eq_true1, piecewise_eq_true2, custom_samples };

/// Bad configuration text or values (exit code 1 in the CLI).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem failure (exit code 3 in the CLI).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical or domain failure inside a pipeline stage (exit code 2 in the CLI).
class StageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    double alpha = 0.9;
    double T = 1.0;
    std::size_t Nx = 64;
    std::size_t Nt = 128;
    double x0 = 0.125;
    SourceProfile g_spec = SourceProfile::paper_sine_bump;
    std::string g_file;  // Nx+1 samples, used with g_spec = custom_samples
    TrueSource rho_true_spec = TrueSource::smooth_eq_true1;
    std::string rho_true_file;  // Nt+1 samples of the true source
    std::string data_file;      // Nt+1 samples of u(x0, .); replaces the synthetic data
    double sigma = 0.0;
    std::uint64_t seed = 1;
    double K = 0.2;
    double stop_eps = 1e-5;
    std::size_t max_iters = 5000;
    inverse::Variant variant = inverse::Variant::plain;
    double mollifier_radius = 5.0 / 128.0;
    std::string output_dir;

    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// `key = value` lines, `#` starts a comment, unknown keys are errors.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Every key, doubles with 17 significant digits; parse_config(format_config(c)) == c.
std::string format_config(const ExperimentConfig& cfg);

/// Assigns one key; shared by the parser and the sweep driver.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

struct RunSummary {
    std::size_t iterations_used = 0;
    bool converged = false;
    std::optional<double> relative_l2_error;
    std::optional<double> max_error;
    double wall_time = 0.0;  // seconds spent in reconstruct
    ExperimentConfig config_echo;
};

/// Everything a run produces, before anything is written.
struct RunResult {
    RunSummary summary;
    TimeSeries kernel;
    TimeSeries u_star;
    TimeSeries w_sigma;
    std::optional<TimeSeries> rho_true;
    inverse::ReconstructionTrace trace;
};

/// g(x) = sin(2 pi x - pi/2) on (1/4, 3/4), 0 elsewhere.
double bump_profile(double x);
/// sin(2 pi t) + 10 t.
double smooth_true_source(double t);
/// 3t on [0, 1/3], 1 on (1/3, 2/3), 3t - 1 on [2/3, 1].
double piecewise_true_source(double t);

/// Builds the problem, synthesizes data, reconstructs. No files are written.
RunResult simulate(const ExperimentConfig& cfg);

/// trace.csv, iterations.csv, iterates.csv, summary.csv and config.txt under dir.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// simulate() and, when cfg.output_dir is set, write_outputs().
RunSummary run_experiment(const ExperimentConfig& cfg);

/// One run per value, seed = cfg.seed + index, outputs in <out>/<param>_<index>/ plus
/// <out>/index.csv. Nothing is written for an empty value list.
std::vector<RunSummary> sweep(const ExperimentConfig& cfg, std::string_view parameter,
                              const std::vector<double>& values);

/// printf "%.17g"; reads back to the same double.
std::string format_double(double x);

/// Comma-separated CSV reader for the files written above; header row first.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t column(std::string_view name) const;
};
CsvTable read_csv(const std::filesystem::path& path);

/// Default output root: $FRACINV_OUTPUT_ROOT, else ./fracinv-output.
std::filesystem::path default_output_root();

// Self-checks behind `fracinv check`.
struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};
std::vector<CheckResult> run_check_suite(std::string_view suite);

}  // namespace fracinv::experiment
