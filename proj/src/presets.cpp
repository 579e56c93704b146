#include "rotalign/presets.hpp"

#include <cmath>
#include <numbers>

#include "rotalign/errors.hpp"

namespace rotalign {

namespace {

constexpr double kIntensity = 7e13;

std::vector<double> linspace(double start, double stop, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] =
            count == 1 ? start : start + (stop - start) * i / static_cast<double>(count - 1);
    }
    return v;
}

ExperimentConfig base(std::string name, double tau_ps) {
    ExperimentConfig c;
    c.name = std::move(name);
    PulseSpec p;
    p.tau_ps = tau_ps;
    p.intensity_wcm2 = kIntensity;
    c.field.pulses = {p};
    c.temperatures = {1.0, 10.0, 20.0, 30.0};
    return c;
}

ExperimentConfig two_pulses(std::string name, double tau_ps, bool monochromatic_first) {
    auto c = base(std::move(name), tau_ps);
    auto second = c.field.pulses.front();
    if (monochromatic_first) {
        c.field.pulses.front().set_gamma_sq(1.0);
    }
    c.field.pulses.push_back(second);
    c.field.t_delay_ps = rotational_period_ps(c.molecule);
    c.temperatures = {30.0};
    return c;
}

void sweep(ExperimentConfig& c, SweepParameter p, std::vector<double> values) {
    c.sweep = SweepSpec{p, std::move(values)};
    c.write_series = false;
}

void variants(ExperimentConfig& c, std::string parameter, std::vector<std::string> values) {
    c.variants = VariantSpec{std::move(parameter), std::move(values)};
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig1",  "fig2",  "fig3",  "fig4",  "fig5",  "fig5a", "fig5b", "fig6",
            "fig6a", "fig6b", "fig7",  "fig8",  "fig8a", "fig8b", "fig9",  "fig9a",
            "fig9b", "fig10", "fig11"};
}

ExperimentConfig preset(std::string_view name, bool fast) {
    const double two_pi = 2.0 * std::numbers::pi;
    const std::string n(name);
    const int fine = fast ? 51 : 101;
    const int coarse = fast ? 21 : 101;

    if (n == "fig1") {
        auto c = base(n, 0.12);
        sweep(c, SweepParameter::GammaSq, linspace(0.0, 1.0, fine));
        return c;
    }
    if (n == "fig2" || n == "fig3") {
        // Same sweep; fig2 reads the *_after columns, fig3 the *_during ones.
        auto c = base(n, 0.12);
        sweep(c, SweepParameter::Tau, linspace(0.02, 8.0, fast ? 41 : 400));
        return c;
    }
    if (n == "fig4") {
        auto c = base(n, 0.12);
        c.temperatures = {30.0};
        sweep(c, SweepParameter::Intensity, linspace(1e13, 1e14, 10));
        variants(c, "shape", {"trapezoid", "gaussian"});
        return c;
    }
    if (n == "fig5" || n == "fig5a" || n == "fig5b") {
        auto c = base(n, n == "fig5b" ? 4.5 : 0.12);
        if (n == "fig5") variants(c, "tau", {"0.12 ps", "4.5 ps"});
        return c;
    }
    if (n == "fig6" || n == "fig6a" || n == "fig6b") {
        auto c = base(n, n == "fig6b" ? 5.28 : 1.18);
        if (n == "fig6") variants(c, "tau", {"1.18 ps", "5.28 ps"});
        return c;
    }
    if (n == "fig7") {
        auto c = base(n, 1.18);
        c.temperatures = {30.0};
        sweep(c, SweepParameter::DeltaCep1, linspace(0.0, two_pi, coarse));
        return c;
    }
    const bool hybrid = n.starts_with("fig8");
    if (hybrid || n.starts_with("fig9")) {
        const std::string suffix = n.substr(4);
        if (suffix != "" && suffix != "a" && suffix != "b") {
            throw ConfigError("unknown preset '" + n + "'");
        }
        auto c = two_pulses(n, suffix == "b" ? 0.1 : 1.18, hybrid);
        sweep(c, SweepParameter::TDelay, linspace(0.0, 4.0, coarse));
        if (suffix.empty()) variants(c, "tau", {"1.18 ps", "0.1 ps"});
        return c;
    }
    if (n == "fig10" || n == "fig11") {
        auto c = two_pulses(n, 0.1, false);
        c.field.t_delay_ps = n == "fig10" ? 2.0 : 1.5;
        sweep(c, SweepParameter::DeltaCep2, linspace(0.0, two_pi, coarse));
        return c;
    }
    throw ConfigError("unknown preset '" + n + "'");
}

} // namespace rotalign
