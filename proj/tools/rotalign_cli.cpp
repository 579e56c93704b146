// rotalign command-line front end: run, sweep, preset, validate.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rotalign/config.hpp"
#include "rotalign/errors.hpp"
#include "rotalign/experiment.hpp"
#include "rotalign/output.hpp"
#include "rotalign/presets.hpp"

using namespace rotalign;

namespace {

struct Common {
    std::string out;
    int workers = 0;
    bool quiet = false;
};

void report(const WrittenFiles& w, const Common& opt, double seconds) {
    if (opt.quiet) return;
    for (const auto& p : w.paths) std::cout << "wrote " << p.string() << "\n";
    std::fprintf(stdout, "done in %.1f s\n", seconds);
    if (w.failures > 0) {
        std::cerr << w.failures << " point(s) failed; see status column / meta json\n";
    }
}

int execute(ExperimentConfig cfg, const Common& opt, bool want_sweep) {
    if (!opt.out.empty()) cfg.output_dir = opt.out;
    if (want_sweep != cfg.sweep.has_value()) {
        std::cerr << "error: " << (want_sweep ? "config has no [sweep] section; use 'run'"
                                              : "config has a [sweep] section; use 'sweep'")
                  << "\n";
        return 2;
    }
    RunOptions ro;
    ro.workers = opt.workers;
    const auto t0 = std::chrono::steady_clock::now();
    WrittenFiles w;
    if (cfg.sweep) {
        const auto result = run_sweep_detailed(cfg, cfg.write_series, ro);
        w = write_sweep_outputs(cfg, result, cfg.output_dir);
    } else {
        const auto cases = run_single(cfg, ro);
        w = write_run_outputs(cfg, cases, cfg.output_dir);
        for (const auto& c : cases) {
            if (!c.ok()) std::cerr << "error (T=" << c.temperature_k << " K): " << c.error << "\n";
        }
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(w, opt, s);
    return w.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laser-driven rotational alignment and orientation of linear molecules"};
    app.set_version_flag("--version", version_string());
    app.require_subcommand(1);

    Common opt;
    std::string config_path;
    std::string preset_name;
    bool fast = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out,-o", opt.out, "Output directory (overrides [output] dir)");
        sub->add_option("--workers,-j", opt.workers, "Worker threads (0 = all cores)")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--quiet,-q", opt.quiet, "Suppress progress output");
    };

    auto* run = app.add_subcommand("run", "Single experiment (no sweep)");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    add_common(run);

    auto* sweep = app.add_subcommand("sweep", "Parameter sweep");
    sweep->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    add_common(sweep);

    auto* pre = app.add_subcommand("preset", "Reproduce a figure preset");
    pre->add_option("name", preset_name, "fig1 ... fig11")->required();
    pre->add_flag("--fast", fast, "Coarser grids for a quick look");
    pre->add_flag("--print", "Print the preset config and exit");
    add_common(pre);

    auto* val = app.add_subcommand("validate", "Parse and check a config without running it");
    val->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*val) {
            auto cfg = load_config(config_path);
            cfg.validate();
            (void)resolve(cfg);
            std::cout << "ok: " << cfg.name << (cfg.sweep ? " (sweep over " : " (single run")
                      << (cfg.sweep ? std::string(to_string(cfg.sweep->parameter)) + ", " +
                                          std::to_string(cfg.sweep->values.size()) + " points)"
                                    : ")")
                      << "\n";
            return 0;
        }
        if (*run) return execute(load_config(config_path), opt, false);
        if (*sweep) return execute(load_config(config_path), opt, true);
        if (*pre) {
            auto cfg = preset(preset_name, fast);
            if (pre->count("--print") > 0) {
                std::cout << to_config_text(cfg);
                return 0;
            }
            return execute(std::move(cfg), opt, cfg.sweep.has_value());
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
