#include "rotalign/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <utility>

#include "rotalign/config.hpp"
#include "rotalign/errors.hpp"

namespace rotalign {

SweepParameter parse_sweep_parameter(std::string_view name) {
    if (name == "tau") return SweepParameter::Tau;
    if (name == "gamma_sq") return SweepParameter::GammaSq;
    if (name == "delta_cep_1" || name == "delta_cep") return SweepParameter::DeltaCep1;
    if (name == "delta_cep_2") return SweepParameter::DeltaCep2;
    if (name == "t_delay") return SweepParameter::TDelay;
    if (name == "I_tot" || name == "intensity") return SweepParameter::Intensity;
    if (name == "temperature") return SweepParameter::Temperature;
    throw ConfigError("unknown sweep parameter '" + std::string(name) +
                      "' (expected tau, gamma_sq, delta_cep_1, delta_cep_2, t_delay, I_tot "
                      "or temperature)");
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
    case SweepParameter::Tau: return "tau";
    case SweepParameter::GammaSq: return "gamma_sq";
    case SweepParameter::DeltaCep1: return "delta_cep_1";
    case SweepParameter::DeltaCep2: return "delta_cep_2";
    case SweepParameter::TDelay: return "t_delay";
    case SweepParameter::Intensity: return "I_tot";
    case SweepParameter::Temperature: return "temperature";
    }
    return "?";
}

std::string_view unit_of(SweepParameter p) {
    switch (p) {
    case SweepParameter::Tau:
    case SweepParameter::TDelay: return "ps";
    case SweepParameter::GammaSq: return "";
    case SweepParameter::DeltaCep1:
    case SweepParameter::DeltaCep2: return "rad";
    case SweepParameter::Intensity: return "W/cm2";
    case SweepParameter::Temperature: return "K";
    }
    return "";
}

void ExperimentConfig::validate() const {
    molecule.validate();
    field.validate();
    if (temperatures.empty()) {
        throw ConfigError("at least one temperature is required");
    }
    for (double t : temperatures) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw ConfigError("temperatures must be finite and non-negative");
        }
    }
    if (!(ensemble_epsilon > 0.0 && ensemble_epsilon < 1.0)) {
        throw ConfigError("ensemble_epsilon must lie in (0, 1)");
    }
    if (!(post_window_ps >= 0.0)) {
        throw ConfigError("post_window must be non-negative");
    }
    if (sweep) {
        if (sweep->values.empty()) {
            throw ConfigError("sweep grid is empty");
        }
        if (!std::is_sorted(sweep->values.begin(), sweep->values.end())) {
            throw ConfigError("sweep grid must be sorted ascending");
        }
        const bool second = sweep->parameter == SweepParameter::TDelay ||
                            sweep->parameter == SweepParameter::DeltaCep2;
        if (second && field.pulses.size() < 2) {
            throw ConfigError("sweeping " + std::string(to_string(sweep->parameter)) +
                              " needs a second pulse");
        }
    }
    if (variants) {
        if (variants->values.empty()) {
            throw ConfigError("variants list is empty");
        }
        if (variants->parameter != "shape") {
            (void)parse_sweep_parameter(variants->parameter);
        }
        for (const auto& v : variants->values) {
            (void)with_variant(*this, variants->parameter, v);
        }
    }
    if (!auto_window) {
        propagation.validate(field);
    }
}

double ExperimentConfig::resolved_post_window_ps() const {
    return post_window_ps > 0.0 ? post_window_ps : 2.0 * rotational_period_ps(molecule);
}

ExperimentConfig with_parameter(ExperimentConfig c, SweepParameter p, double value) {
    auto need_second = [&]() -> PulseSpec& {
        if (c.field.pulses.size() < 2) {
            throw ConfigError(std::string(to_string(p)) + " needs a second pulse");
        }
        return c.field.pulses[1];
    };
    switch (p) {
    case SweepParameter::Tau:
        for (auto& pulse : c.field.pulses) pulse.tau_ps = value;
        break;
    case SweepParameter::GammaSq:
        c.field.pulses.front().set_gamma_sq(value);
        break;
    case SweepParameter::DeltaCep1:
        c.field.pulses.front().delta_cep = value;
        break;
    case SweepParameter::DeltaCep2:
        need_second().delta_cep = value;
        break;
    case SweepParameter::TDelay:
        need_second();
        c.field.t_delay_ps = value;
        break;
    case SweepParameter::Intensity:
        for (auto& pulse : c.field.pulses) pulse.intensity_wcm2 = value;
        break;
    case SweepParameter::Temperature:
        c.temperatures = {value};
        break;
    }
    return c;
}

ExperimentConfig with_variant(ExperimentConfig c, const std::string& parameter,
                              const std::string& value) {
    if (parameter == "shape") {
        const auto shape = parse_envelope_shape(value);
        for (auto& pulse : c.field.pulses) pulse.shape = shape;
        return c;
    }
    const auto p = parse_sweep_parameter(parameter);
    const double v = parse_quantity(value, quantity_of(p), rotational_period_ps(c.molecule));
    return with_parameter(std::move(c), p, v);
}

ExperimentConfig resolve(ExperimentConfig c) {
    c.field.validate();
    if (c.auto_center) {
        // Earliest support edge at t = 0.
        double center = c.field.pulses[0].half_support_ps();
        if (c.field.pulses.size() == 2) {
            center = std::max(center, c.field.pulses[1].half_support_ps() - c.field.t_delay_ps);
        }
        c.field.pulses[0].t_center_ps = center;
        c.auto_center = false;
    }
    if (c.auto_window) {
        const auto [t_on, t_off] = c.field.window_ps();
        const double stride = c.propagation.sample_stride_ps();
        const double start = t_on - 10.0 * stride;
        const double needed = t_off + c.resolved_post_window_ps() - start;
        const double samples = std::ceil(needed / stride - 1e-9) + 1.0;
        c.propagation.t_start_ps = start;
        c.propagation.t_end_ps = start + samples * stride;
        c.auto_window = false;
    }
    c.propagation.validate(c.field);
    return c;
}

namespace {

struct Case {
    std::string variant;
    double temperature_k = 0.0;
    double param = 0.0;
    ExperimentConfig config;  // resolved
    ThermalEnsemble ensemble;
    std::vector<std::pair<int, int>> members;  // unique (J, |M|)
    std::vector<std::size_t> member_of_entry;
};

struct MemberSlot {
    MemberTrace trace;
    std::string error;
};

int worker_count(const RunOptions& options) {
    if (options.workers > 0) {
        return options.workers;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

Case make_case(const ExperimentConfig& base, std::string variant, double temperature,
               double param) {
    Case c;
    c.variant = std::move(variant);
    c.temperature_k = temperature;
    c.param = param;
    c.config = resolve(base);
    c.ensemble = build_ensemble(c.config.molecule, temperature, c.config.ensemble_epsilon);
    // +M and -M evolve identically; the potential only sees M^2.
    std::map<std::pair<int, int>, std::size_t> index;
    for (const auto& e : c.ensemble.entries) {
        const std::pair<int, int> key{e.j, std::abs(e.m)};
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, c.members.size()).first;
            c.members.push_back(key);
        }
        c.member_of_entry.push_back(it->second);
    }
    if (c.ensemble.max_j() > c.config.propagation.j_max) {
        throw ConfigError("j_max = " + std::to_string(c.config.propagation.j_max) +
                          " is below the thermally populated J = " +
                          std::to_string(c.ensemble.max_j()));
    }
    return c;
}

CaseResult reduce_case(const Case& c, const std::vector<MemberSlot>& slots) {
    CaseResult r;
    r.variant = c.variant;
    r.temperature_k = c.temperature_k;
    for (std::size_t i = 0; i < c.ensemble.entries.size(); ++i) {
        const auto& slot = slots[c.member_of_entry[i]];
        if (!slot.error.empty()) {
            const auto& e = c.ensemble.entries[i];
            r.error = "member (J=" + std::to_string(e.j) + ", M=" + std::to_string(e.m) +
                      "): " + slot.error;
            return r;
        }
    }
    std::vector<WeightedSeries> weighted;
    weighted.reserve(c.ensemble.entries.size());
    for (std::size_t i = 0; i < c.ensemble.entries.size(); ++i) {
        weighted.push_back({c.ensemble.entries[i].weight, &slots[c.member_of_entry[i]].trace.series});
    }
    r.series = thermal_average(weighted);
    r.extrema = extract_extrema(r.series, c.config.resolved_post_window_ps());
    r.report.dt_ps = c.config.propagation.dt_ps;
    r.report.j_max = c.config.propagation.j_max;
    for (const auto& slot : slots) {
        const auto& rep = slot.trace.report;
        r.report.dt_ps = std::min(r.report.dt_ps, rep.dt_ps);
        r.report.j_max = std::max(r.report.j_max, rep.j_max);
        r.report.rounds = std::max(r.report.rounds, rep.rounds);
        r.report.residual = std::max(r.report.residual, rep.residual);
        r.report.max_norm_deviation = std::max(r.report.max_norm_deviation, rep.max_norm_deviation);
    }
    return r;
}

/// Runs every member of every case on a fixed pool; results land in
/// per-(case, member) slots so the reduction order never depends on scheduling.
std::vector<CaseResult> execute(const std::vector<Case>& cases, int workers) {
    std::vector<CaseResult> results(cases.size());
    const std::size_t chunk = static_cast<std::size_t>(std::max(1, workers));
    for (std::size_t first = 0; first < cases.size(); first += chunk) {
        const std::size_t last = std::min(cases.size(), first + chunk);
        std::vector<std::vector<MemberSlot>> slots(last - first);
        std::vector<std::pair<std::size_t, std::size_t>> tasks;
        for (std::size_t ci = first; ci < last; ++ci) {
            slots[ci - first].resize(cases[ci].members.size());
            for (std::size_t mi = 0; mi < cases[ci].members.size(); ++mi) {
                tasks.emplace_back(ci, mi);
            }
        }
        std::atomic<std::size_t> next{0};
        auto work = [&]() {
            for (std::size_t t = next++; t < tasks.size(); t = next++) {
                const auto [ci, mi] = tasks[t];
                const Case& c = cases[ci];
                auto& slot = slots[ci - first][mi];
                const auto [j, m] = c.members[mi];
                try {
                    slot.trace = propagate_observables(j, m, convert_to_internal(c.config.molecule),
                                                       c.config.field, c.config.propagation);
                } catch (const std::exception& e) {
                    slot.error = e.what();
                }
            }
        };
        const int n_threads = static_cast<int>(std::min<std::size_t>(
            static_cast<std::size_t>(workers), tasks.size()));
        if (n_threads <= 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (int i = 0; i < n_threads; ++i) {
                pool.emplace_back(work);
            }
        }
        for (std::size_t ci = first; ci < last; ++ci) {
            try {
                results[ci] = reduce_case(cases[ci], slots[ci - first]);
            } catch (const std::exception& e) {
                results[ci].variant = cases[ci].variant;
                results[ci].temperature_k = cases[ci].temperature_k;
                results[ci].error = e.what();
            }
        }
    }
    return results;
}

std::vector<std::pair<std::string, ExperimentConfig>> expand_variants(const ExperimentConfig& c) {
    std::vector<std::pair<std::string, ExperimentConfig>> out;
    if (!c.variants) {
        out.emplace_back(std::string{}, c);
        return out;
    }
    for (const auto& v : c.variants->values) {
        out.emplace_back(v, with_variant(c, c.variants->parameter, v));
    }
    return out;
}

} // namespace

std::vector<CaseResult> run_single(const ExperimentConfig& config, const RunOptions& options) {
    config.validate();
    if (config.sweep) {
        throw ConfigError("run_single: config has a sweep section; use run_sweep");
    }
    std::vector<Case> cases;
    for (const auto& [label, cfg] : expand_variants(config)) {
        for (double t : cfg.temperatures) {
            cases.push_back(make_case(cfg, label, t, 0.0));
        }
    }
    return execute(cases, worker_count(options));
}

CaseResult run_case(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentConfig single = config;
    single.temperatures = {config.temperatures.front()};
    single.variants.reset();
    auto results = run_single(single, options);
    if (!results.front().ok()) {
        throw NumericalError(results.front().error, 0.0);
    }
    return std::move(results.front());
}

SweepResult run_sweep_detailed(const ExperimentConfig& config, bool keep_series,
                               const RunOptions& options) {
    config.validate();
    if (!config.sweep) {
        throw ConfigError("run_sweep: config has no sweep section");
    }
    const auto& sweep = *config.sweep;
    const bool temperature_swept = sweep.parameter == SweepParameter::Temperature;

    std::vector<Case> cases;
    std::vector<SweepRow> rows;
    std::vector<std::string> setup_errors;
    for (const auto& [label, cfg] : expand_variants(config)) {
        const std::vector<double> temps =
            temperature_swept ? std::vector<double>{0.0} : cfg.temperatures;
        for (double t : temps) {
            for (double v : sweep.values) {
                SweepRow row;
                row.param = v;
                row.variant = label;
                row.temperature_k = temperature_swept ? v : t;
                try {
                    const auto point = with_parameter(cfg, sweep.parameter, v);
                    cases.push_back(make_case(point, label, row.temperature_k, v));
                    setup_errors.emplace_back();
                } catch (const std::exception& e) {
                    // Keep the row; a placeholder case keeps indices aligned.
                    Case placeholder;
                    placeholder.variant = label;
                    placeholder.temperature_k = row.temperature_k;
                    placeholder.param = v;
                    cases.push_back(std::move(placeholder));
                    setup_errors.emplace_back(e.what());
                }
                rows.push_back(std::move(row));
            }
        }
    }

    // Placeholders carry no members; execute() leaves them for us to mark.
    auto results = execute(cases, worker_count(options));
    SweepResult out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto& row = rows[i];
        if (!setup_errors[i].empty()) {
            row.error = setup_errors[i];
            results[i] = CaseResult{};
            results[i].variant = row.variant;
            results[i].temperature_k = row.temperature_k;
            results[i].error = row.error;
        } else if (!results[i].ok()) {
            row.error = results[i].error;
        } else {
            row.extrema = results[i].extrema;
            row.report = results[i].report;
        }
    }
    out.rows = std::move(rows);
    if (keep_series) {
        out.cases = std::move(results);
    }
    return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const RunOptions& options) {
    return run_sweep_detailed(config, false, options).rows;
}

} // namespace rotalign
