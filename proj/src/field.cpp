#include "rotalign/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "rotalign/errors.hpp"
#include "rotalign/units.hpp"

namespace rotalign {

EnvelopeShape parse_envelope_shape(std::string_view name) {
    if (name == "trapezoid" || name == "trapezoidal") {
        return EnvelopeShape::Trapezoid;
    }
    if (name == "gaussian" || name == "gauss") {
        return EnvelopeShape::Gaussian;
    }
    throw ConfigError("unknown pulse shape '" + std::string(name) + "'");
}

std::string_view to_string(EnvelopeShape shape) {
    return shape == EnvelopeShape::Trapezoid ? "trapezoid" : "gaussian";
}

void PulseSpec::validate() const {
    if (!(tau_ps > 0.0) || !std::isfinite(tau_ps)) {
        throw ConfigError("pulse duration tau must be positive");
    }
    if (!(intensity_wcm2 >= 0.0) || !std::isfinite(intensity_wcm2)) {
        throw ConfigError("pulse intensity must be non-negative");
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ConfigError("two-color ratio gamma must lie in [0, 1]");
    }
    if (!std::isfinite(delta_cep) || !std::isfinite(t_center_ps)) {
        throw ConfigError("pulse phase and center must be finite");
    }
    if (!(omega_inv_cm > 0.0)) {
        throw ConfigError("carrier frequency must be positive");
    }
    if (!(plateau_ratio >= 0.0) || !std::isfinite(plateau_ratio)) {
        throw ConfigError("trapezoid plateau ratio must be non-negative");
    }
}

void PulseSpec::set_gamma_sq(double g2) {
    if (!(g2 >= 0.0 && g2 <= 1.0)) {
        throw ConfigError("gamma^2 must lie in [0, 1]");
    }
    gamma = std::sqrt(g2);
}

double PulseSpec::rise_ps() const {
    // FWHM = plateau + rise, since the half points sit mid-ramp.
    return tau_ps / (plateau_ratio + 1.0);
}

double PulseSpec::half_support_ps() const {
    if (shape == EnvelopeShape::Trapezoid) {
        return 0.5 * plateau_ratio * rise_ps() + rise_ps();
    }
    return tau_ps * std::sqrt(std::log(1.0 / kGaussianCutoff) / (4.0 * std::log(2.0)));
}

double PulseSpec::fundamental_amplitude() const {
    return units::intensity_to_peak_field(intensity_wcm2) * gamma;
}

double PulseSpec::harmonic_amplitude() const {
    return units::intensity_to_peak_field(intensity_wcm2) *
           std::sqrt(std::max(0.0, 1.0 - gamma * gamma));
}

void FieldConfig::validate() const {
    if (pulses.empty() || pulses.size() > 2) {
        throw ConfigError("a field needs one or two pulses");
    }
    for (const auto& p : pulses) {
        p.validate();
    }
    if (!std::isfinite(t_delay_ps)) {
        throw ConfigError("pulse delay must be finite");
    }
    if (pulses.size() == 2 && pulses[0].omega_inv_cm != pulses[1].omega_inv_cm) {
        throw ConfigError("both pulses must share the carrier frequency");
    }
}

std::vector<PulseSpec> FieldConfig::placed_pulses() const {
    std::vector<PulseSpec> out = pulses;
    if (out.size() == 2) {
        out[1].t_center_ps = out[0].t_center_ps + t_delay_ps;
    }
    return out;
}

std::pair<double, double> FieldConfig::window_ps() const {
    double on = std::numeric_limits<double>::infinity();
    double off = -std::numeric_limits<double>::infinity();
    for (const auto& p : placed_pulses()) {
        on = std::min(on, p.t_center_ps - p.half_support_ps());
        off = std::max(off, p.t_center_ps + p.half_support_ps());
    }
    return {on, off};
}

bool FieldConfig::is_off(double t0_ps, double t1_ps) const {
    const double lo = std::min(t0_ps, t1_ps);
    const double hi = std::max(t0_ps, t1_ps);
    for (const auto& p : placed_pulses()) {
        const double on = p.t_center_ps - p.half_support_ps();
        const double off = p.t_center_ps + p.half_support_ps();
        if (p.intensity_wcm2 > 0.0 && hi > on && lo < off) {
            return false;
        }
    }
    return true;
}

double envelope(const PulseSpec& pulse, double t_ps) {
    const double t = t_ps - pulse.t_center_ps;
    if (pulse.shape == EnvelopeShape::Gaussian) {
        if (std::abs(t) >= pulse.half_support_ps()) {
            return 0.0;
        }
        const double r = t / pulse.tau_ps;
        return std::exp(-4.0 * std::log(2.0) * r * r);
    }
    const double rise = pulse.rise_ps();
    const double half_plateau = 0.5 * pulse.plateau_ratio * rise;
    const double a = std::abs(t);
    if (a <= half_plateau) {
        return 1.0;
    }
    if (a >= half_plateau + rise) {
        return 0.0;
    }
    return 1.0 - (a - half_plateau) / rise;
}

double instantaneous_field(const PulseSpec& placed_pulse, double t_ps) {
    const double f = envelope(placed_pulse, t_ps);
    if (f == 0.0) {
        return 0.0;
    }
    const double w = units::wavenumber_to_au(placed_pulse.omega_inv_cm);
    const double tl = units::ps_to_au(t_ps - placed_pulse.t_center_ps);
    return f * (placed_pulse.fundamental_amplitude() * std::cos(w * tl) +
                placed_pulse.harmonic_amplitude() * std::cos(2.0 * w * tl + placed_pulse.delta_cep));
}

double instantaneous_field(const FieldConfig& config, double t_ps) {
    const auto placed = config.placed_pulses();
    return instantaneous_field(std::span<const PulseSpec>(placed), t_ps);
}

double instantaneous_field(std::span<const PulseSpec> placed, double t_ps) {
    double e = 0.0;
    for (const auto& p : placed) {
        e += instantaneous_field(p, t_ps);
    }
    return e;
}

FieldMoments cycle_averaged_coefficients(const PulseSpec& placed_pulse, double t_ps) {
    const double f = envelope(placed_pulse, t_ps);
    const double e0 = units::intensity_to_peak_field(placed_pulse.intensity_wcm2) * f;
    const double g = placed_pulse.gamma;
    FieldMoments m;
    m.e1 = 0.0;
    m.e2 = 0.5 * e0 * e0;
    m.e3 = 0.75 * e0 * e0 * e0 * g * g * std::sqrt(std::max(0.0, 1.0 - g * g)) *
           std::cos(placed_pulse.delta_cep);
    return m;
}

FieldMoments cycle_averaged_coefficients(const FieldConfig& config, double t_ps) {
    const auto placed = config.placed_pulses();
    return cycle_averaged_coefficients(std::span<const PulseSpec>(placed), t_ps);
}

FieldMoments cycle_averaged_coefficients(std::span<const PulseSpec> placed, double t_ps) {
    if (placed.size() == 1) {
        return cycle_averaged_coefficients(placed[0], t_ps);
    }
    // E = Re[a e^{i w t} + b e^{2 i w t}] with a, b summed over pulses.
    std::complex<double> a{0.0, 0.0};
    std::complex<double> b{0.0, 0.0};
    for (const auto& p : placed) {
        const double f = envelope(p, t_ps);
        if (f == 0.0) {
            continue;
        }
        const double w = units::wavenumber_to_au(p.omega_inv_cm);
        const double c = units::ps_to_au(p.t_center_ps);
        a += f * p.fundamental_amplitude() * std::polar(1.0, -w * c);
        b += f * p.harmonic_amplitude() * std::polar(1.0, p.delta_cep - 2.0 * w * c);
    }
    FieldMoments m;
    m.e2 = 0.5 * (std::norm(a) + std::norm(b));
    m.e3 = 0.75 * std::real(a * a * std::conj(b));
    return m;
}

FieldMoments instantaneous_moments(const FieldConfig& config, double t_ps) {
    const double e = instantaneous_field(config, t_ps);
    return {e, e * e, e * e * e};
}

double harmonic_period_ps(double omega_inv_cm) {
    return units::au_to_ps(units::kPi / units::wavenumber_to_au(omega_inv_cm));
}

} // namespace rotalign
