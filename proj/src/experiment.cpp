#include "fracinv/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace fracinv::experiment {

double bump_profile(double x) {
    if (x > 0.25 && x < 0.75) return std::sin(2.0 * std::numbers::pi * x - std::numbers::pi / 2.0);
    return 0.0;
}

double smooth_true_source(double t) { return std::sin(2.0 * std::numbers::pi * t) + 10.0 * t; }

double piecewise_true_source(double t) {
    if (t <= 1.0 / 3.0) return 3.0 * t;
    if (t < 2.0 / 3.0) return 1.0;
    return 3.0 * t - 1.0;
}

namespace {

std::vector<double> read_samples(const std::string& file, std::size_t expected, const char* what) {
    std::ifstream in(file);
    if (!in) throw IoError(std::string("cannot open ") + what + " file " + file);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (char& c : line)
            if (c == ',' || c == ';') c = ' ';
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            char* end = nullptr;
            const double v = std::strtod(tok.c_str(), &end);
            if (end != tok.c_str() + tok.size())
                throw ConfigError(std::string(what) + " file " + file + ": bad number '" + tok + "'");
            values.push_back(v);
        }
    }
    if (values.size() != expected)
        throw ConfigError(std::string(what) + " file " + file + ": expected " + std::to_string(expected) +
                          " values, found " + std::to_string(values.size()));
    return values;
}

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const IoError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(std::string(name) + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

RunResult simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    const forward::SpaceGrid space(cfg.Nx);
    const TimeGrid time(cfg.T, cfg.Nt);
    const FractionalOrder alpha(cfg.alpha);

    const forward::SpatialProfile g = stage("source profile", [&] {
        if (cfg.g_spec == SourceProfile::paper_sine_bump)
            return forward::SpatialProfile::sample(space, bump_profile);
        return forward::SpatialProfile(space, read_samples(cfg.g_file, space.size(), "g"));
    });

    const TimeSeries kernel = stage("homogeneous solve", [&] {
        return forward::probe(forward::solve_homogeneous_l1(g, alpha, time), cfg.x0);
    });

    std::optional<TimeSeries> truth;
    switch (cfg.rho_true_spec) {
        case TrueSource::smooth_eq_true1: truth = TimeSeries::sample(time, smooth_true_source); break;
        case TrueSource::piecewise_eq_true2: truth = TimeSeries::sample(time, piecewise_true_source); break;
        case TrueSource::custom_samples:
            if (!cfg.rho_true_file.empty())
                truth = TimeSeries(time, read_samples(cfg.rho_true_file, time.size(), "rho_true"));
            break;
    }

    const TimeSeries u_star = stage("data synthesis", [&] {
        if (!cfg.data_file.empty()) return TimeSeries(time, read_samples(cfg.data_file, time.size(), "data"));
        return forward::probe(forward::solve_inhomogeneous_l1(g, *truth, alpha, time), cfg.x0);
    });
    const TimeSeries w_sigma = stage("noise", [&] { return inverse::add_noise(u_star, cfg.sigma, cfg.seed); });

    inverse::IterationConfig icfg;
    icfg.K = cfg.K;
    icfg.stop_eps = cfg.stop_eps;
    icfg.max_iters = cfg.max_iters;
    icfg.variant = cfg.variant;
    if (cfg.variant == inverse::Variant::mollified) icfg.mollifier = MollifierSpec(cfg.mollifier_radius);

    const auto start = std::chrono::steady_clock::now();
    inverse::ReconstructionTrace trace =
        stage("reconstruction", [&] { return inverse::reconstruct(w_sigma, kernel, alpha, icfg); });
    const auto stop = std::chrono::steady_clock::now();

    RunSummary summary;
    summary.iterations_used = trace.iterations_used;
    summary.converged = trace.converged;
    summary.wall_time = std::chrono::duration<double>(stop - start).count();
    summary.config_echo = cfg;
    if (truth) {
        const TimeSeries err = trace.result() - *truth;
        const double scale = l2_norm(*truth);
        summary.relative_l2_error = scale > 0.0 ? l2_norm(err) / scale : l2_norm(err);
        summary.max_error = max_norm(err);
    }
    return RunResult{std::move(summary), kernel, u_star, w_sigma, std::move(truth), std::move(trace)};
}

void write_outputs(const RunResult& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    const TimeGrid& grid = r.kernel.grid();
    const TimeSeries& rho_hat = r.trace.result();

    std::string trace = "t,rho_true,rho_hat,u_star,w_sigma,kernel_v\n";
    for (std::size_t l = 0; l < grid.size(); ++l) {
        trace += format_double(grid.node(l));
        trace += ',' + (r.rho_true ? format_double((*r.rho_true)[l]) : std::string());
        trace += ',' + format_double(rho_hat[l]);
        trace += ',' + format_double(r.u_star[l]);
        trace += ',' + format_double(r.w_sigma[l]);
        trace += ',' + format_double(r.kernel[l]) + '\n';
    }
    write_file(dir / "trace.csv", trace);

    std::string iters = "m,update_l2,error_l2\n";
    for (std::size_t m = 1; m < r.trace.iterates.size(); ++m) {
        std::optional<double> err;
        if (r.rho_true) err = l2_norm(r.trace.iterates[m] - *r.rho_true);
        iters += std::to_string(m) + ',' + format_double(r.trace.update_norms[m - 1]) + ',' + optional_cell(err) + '\n';
    }
    write_file(dir / "iterations.csv", iters);

    // first iterates, for montage plots
    const std::size_t shown = std::min<std::size_t>(4, r.trace.iterates.size() - 1);
    std::string first = "t";
    for (std::size_t m = 1; m <= shown; ++m) first += ",rho_" + std::to_string(m);
    first += '\n';
    for (std::size_t l = 0; l < grid.size(); ++l) {
        first += format_double(grid.node(l));
        for (std::size_t m = 1; m <= shown; ++m) first += ',' + format_double(r.trace.iterates[m][l]);
        first += '\n';
    }
    write_file(dir / "iterates.csv", first);

    const RunSummary& s = r.summary;
    std::string summary = "iterations_used,converged,relative_l2_error,max_error,wall_time,config_echo\n";
    summary += std::to_string(s.iterations_used) + ',' + (s.converged ? "true" : "false") + ',' +
               optional_cell(s.relative_l2_error) + ',' + optional_cell(s.max_error) + ',' +
               format_double(s.wall_time) + ",config.txt\n";
    write_file(dir / "summary.csv", summary);
    write_file(dir / "config.txt", format_config(s.config_echo));
}

RunSummary run_experiment(const ExperimentConfig& cfg) {
    RunResult r = simulate(cfg);
    if (!cfg.output_dir.empty()) write_outputs(r, cfg.output_dir);
    return r.summary;
}

std::vector<RunSummary> sweep(const ExperimentConfig& cfg, std::string_view parameter,
                              const std::vector<double>& values) {
    if (parameter != "sigma" && parameter != "alpha" && parameter != "Nt" && parameter != "mollifier_radius")
        throw ConfigError("sweep: unknown parameter '" + std::string(parameter) +
                          "' (expected sigma, alpha, Nt or mollifier_radius)");
    if (parameter == "Nt")
        for (double v : values)
            if (!(v >= 2.0) || v != std::floor(v)) throw ConfigError("sweep: Nt values must be integers >= 2");

    std::vector<RunSummary> out;
    if (values.empty()) return out;

    std::string index = "index,parameter,value,directory,iterations_used,converged,relative_l2_error,max_error,wall_time\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        ExperimentConfig c = cfg;
        if (parameter == "Nt") c.Nt = static_cast<std::size_t>(values[i]);
        else set_config_value(c, parameter, format_double(values[i]));
        c.seed = cfg.seed + i;
        const std::string sub = std::string(parameter) + "_" + std::to_string(i);
        if (!cfg.output_dir.empty()) c.output_dir = (std::filesystem::path(cfg.output_dir) / sub).string();
        out.push_back(run_experiment(c));
        const RunSummary& s = out.back();
        index += std::to_string(i) + ',' + std::string(parameter) + ',' + format_double(values[i]) + ',' + sub + ',' +
                 std::to_string(s.iterations_used) + ',' + (s.converged ? "true" : "false") + ',' +
                 optional_cell(s.relative_l2_error) + ',' + optional_cell(s.max_error) + ',' +
                 format_double(s.wall_time) + '\n';
    }
    if (!cfg.output_dir.empty()) write_file(std::filesystem::path(cfg.output_dir) / "index.csv", index);
    return out;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("CSV has no column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream s(line);
        while (std::getline(s, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    CsvTable t;
    std::string line;
    if (std::getline(in, line)) t.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) t.rows.push_back(split(line));
    return t;
}

}  // namespace fracinv::experiment
