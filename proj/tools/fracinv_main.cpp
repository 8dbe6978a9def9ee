// fracinv: run, sweep and self-check source reconstructions from point data.

#include "fracinv/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

namespace fx = fracinv::experiment;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> values;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        if (item.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end != item.c_str() + item.size()) throw fx::ConfigError("bad sweep value '" + item + "'");
        values.push_back(v);
    }
    return values;
}

void print_summary(const fx::RunSummary& s, const std::string& where) {
    std::printf("iterations_used=%zu converged=%s", s.iterations_used, s.converged ? "true" : "false");
    if (s.relative_l2_error) std::printf(" relative_l2_error=%.6e max_error=%.6e", *s.relative_l2_error, *s.max_error);
    std::printf(" wall_time=%.3fs", s.wall_time);
    if (!where.empty()) std::printf(" out=%s", where.c_str());
    std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Source reconstruction for time-fractional diffusion from single-point data"};
    app.require_subcommand(1);

    std::string config_path, out_dir, param, values_text, suite;
    std::uint64_t seed = 0;

    auto* run = app.add_subcommand("run", "Run one experiment from a config file");
    run->add_option("--config", config_path, "Config file (key = value)")->required();
    run->add_option("--out", out_dir, "Output directory");
    auto* seed_opt = run->add_option("--seed", seed, "Noise seed, overrides the config");

    auto* sw = app.add_subcommand("sweep", "Run one experiment per parameter value");
    sw->add_option("--config", config_path, "Config file (key = value)")->required();
    sw->add_option("--param", param, "sigma, alpha, Nt or mollifier_radius")->required();
    sw->add_option("--values", values_text, "Comma-separated values")->required();
    sw->add_option("--out", out_dir, "Output directory");

    auto* check = app.add_subcommand("check", "Run a diagnostic suite");
    check->add_option("--suite", suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"fraccalc", "forward", "rci", "duhamel"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) {
            bool ok = true;
            for (const auto& r : fx::run_check_suite(suite)) {
                std::printf("%s  %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
                ok = ok && r.passed;
            }
            return ok ? kOk : kNumerical;
        }

        fx::ExperimentConfig cfg = fx::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (cfg.output_dir.empty()) cfg.output_dir = fx::default_output_root().string();

        if (run->parsed()) {
            if (*seed_opt) cfg.seed = seed;
            print_summary(fx::run_experiment(cfg), cfg.output_dir);
            return kOk;
        }

        const auto values = parse_values(values_text);
        const auto summaries = fx::sweep(cfg, param, values);
        for (std::size_t i = 0; i < summaries.size(); ++i) {
            std::printf("[%zu] %s=%g  ", i, param.c_str(), values[i]);
            print_summary(summaries[i], "");
        }
        return kOk;
    } catch (const fx::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const fx::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
