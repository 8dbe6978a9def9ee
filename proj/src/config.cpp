#include "fracinv/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fracinv::experiment {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
    // plain decimal, or a ratio "a/b"
    const std::string s(text);
    const auto slash = s.find('/');
    auto one = [&](const std::string& part) {
        char* end = nullptr;
        const double v = std::strtod(part.c_str(), &end);
        if (part.empty() || end != part.c_str() + part.size() || !std::isfinite(v))
            throw ConfigError("config key '" + std::string(key) + "': cannot parse '" + s + "' as a number");
        return v;
    };
    if (slash == std::string::npos) return one(s);
    const double den = one(std::string(trim(s.substr(slash + 1))));
    if (den == 0.0) throw ConfigError("config key '" + std::string(key) + "': division by zero");
    return one(std::string(trim(s.substr(0, slash)))) / den;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    const std::string s(text);
    char* end = nullptr;
    if (s.empty() || s.front() == '-')
        throw ConfigError("config key '" + std::string(key) + "': expected a nonnegative integer, got '" + s + "'");
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size())
        throw ConfigError("config key '" + std::string(key) + "': expected a nonnegative integer, got '" + s + "'");
    return v;
}

std::string_view to_string(SourceProfile g) {
    return g == SourceProfile::paper_sine_bump ? "paper_sine_bump" : "custom_samples";
}

std::string_view to_string(TrueSource r) {
    switch (r) {
        case TrueSource::smooth_eq_true1: return "smooth_eq_true1";
        case TrueSource::piecewise_eq_true2: return "piecewise_eq_true2";
        case TrueSource::custom_samples: return "custom_samples";
    }
    return "unknown";
}

}  // namespace

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "alpha") cfg.alpha = parse_number(key, value);
    else if (key == "T") cfg.T = parse_number(key, value);
    else if (key == "Nx") cfg.Nx = parse_unsigned(key, value);
    else if (key == "Nt") cfg.Nt = parse_unsigned(key, value);
    else if (key == "x0") cfg.x0 = parse_number(key, value);
    else if (key == "g") {
        if (value == "paper_sine_bump") cfg.g_spec = SourceProfile::paper_sine_bump;
        else if (value == "custom_samples") cfg.g_spec = SourceProfile::custom_samples;
        else throw ConfigError("config key 'g': unknown profile '" + std::string(value) + "'");
    } else if (key == "g_file") cfg.g_file = value;
    else if (key == "rho_true") {
        if (value == "smooth_eq_true1") cfg.rho_true_spec = TrueSource::smooth_eq_true1;
        else if (value == "piecewise_eq_true2") cfg.rho_true_spec = TrueSource::piecewise_eq_true2;
        else if (value == "custom_samples") cfg.rho_true_spec = TrueSource::custom_samples;
        else throw ConfigError("config key 'rho_true': unknown source '" + std::string(value) + "'");
    } else if (key == "rho_true_file") cfg.rho_true_file = value;
    else if (key == "data_file") cfg.data_file = value;
    else if (key == "sigma") cfg.sigma = parse_number(key, value);
    else if (key == "seed") cfg.seed = parse_unsigned(key, value);
    else if (key == "K") cfg.K = parse_number(key, value);
    else if (key == "stop_eps") cfg.stop_eps = parse_number(key, value);
    else if (key == "max_iters") cfg.max_iters = parse_unsigned(key, value);
    else if (key == "variant") {
        try {
            cfg.variant = inverse::parse_variant(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "mollifier_radius") cfg.mollifier_radius = parse_number(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError("invalid config: " + m); };
    if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0, 1]");
    if (!(T > 0.0)) fail("T must be positive");
    if (Nx < 2) fail("Nx must be at least 2");
    if (Nt < 2) fail("Nt must be at least 2");
    if (!(x0 > 0.0 && x0 < 1.0)) fail("x0 must lie in (0, 1)");
    const double scaled = x0 * static_cast<double>(Nx);
    if (std::abs(scaled - std::round(scaled)) > 1e-9) fail("x0 * Nx must be an integer");
    if (!(sigma >= 0.0)) fail("sigma must be nonnegative");
    if (!(K > 0.0)) fail("K must be positive");
    if (!(stop_eps > 0.0)) fail("stop_eps must be positive");
    if (max_iters < 1) fail("max_iters must be at least 1");
    if (variant == inverse::Variant::mollified && !(mollifier_radius > 0.0 && mollifier_radius < T))
        fail("mollifier_radius must lie in (0, T)");
    if (g_spec == SourceProfile::custom_samples && g_file.empty()) fail("g = custom_samples needs g_file");
    if (rho_true_spec == TrueSource::custom_samples && rho_true_file.empty() && data_file.empty())
        fail("rho_true = custom_samples needs rho_true_file or data_file");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(view.substr(0, eq));
        const auto value = trim(view.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        set_config_value(cfg, key, value);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    ExperimentConfig cfg = parse_config(in);
    // sample files are resolved against the config file's directory
    const auto base = path.parent_path();
    for (std::string* f : {&cfg.g_file, &cfg.rho_true_file, &cfg.data_file})
        if (!f->empty() && std::filesystem::path(*f).is_relative()) *f = (base / *f).lexically_normal().string();
    return cfg;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_config(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "alpha = " << format_double(c.alpha) << '\n'
        << "T = " << format_double(c.T) << '\n'
        << "Nx = " << c.Nx << '\n'
        << "Nt = " << c.Nt << '\n'
        << "x0 = " << format_double(c.x0) << '\n'
        << "g = " << to_string(c.g_spec) << '\n'
        << "g_file = " << c.g_file << '\n'
        << "rho_true = " << to_string(c.rho_true_spec) << '\n'
        << "rho_true_file = " << c.rho_true_file << '\n'
        << "data_file = " << c.data_file << '\n'
        << "sigma = " << format_double(c.sigma) << '\n'
        << "seed = " << c.seed << '\n'
        << "K = " << format_double(c.K) << '\n'
        << "stop_eps = " << format_double(c.stop_eps) << '\n'
        << "max_iters = " << c.max_iters << '\n'
        << "variant = " << inverse::to_string(c.variant) << '\n'
        << "mollifier_radius = " << format_double(c.mollifier_radius) << '\n'
        << "output_dir = " << c.output_dir << '\n';
    return out.str();
}

std::filesystem::path default_output_root() {
    if (const char* root = std::getenv("FRACINV_OUTPUT_ROOT"); root && *root) return root;
    return "fracinv-output";
}

}  // namespace fracinv::experiment
