#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace rotalign {

enum class EnvelopeShape { Trapezoid, Gaussian };

EnvelopeShape parse_envelope_shape(std::string_view name);
std::string_view to_string(EnvelopeShape shape);

inline constexpr double kDefaultCarrierInvCm = 12500.0;  // 800 nm
inline constexpr double kDefaultPlateauRatio = 3.0;       // plateau / rise for slope 4/tau
/// Gaussian field envelopes are cut where they fall below this value.
inline constexpr double kGaussianCutoff = 1e-4;

/// One two-color pulse: gamma cos(w t') + sqrt(1 - gamma^2) cos(2 w t' + delta),
/// modulated by an envelope with FWHM tau and peak amplitude from intensity_wcm2.
struct PulseSpec {
    EnvelopeShape shape = EnvelopeShape::Trapezoid;
    double tau_ps = 0.12;
    double intensity_wcm2 = 7e13;
    double gamma = 0.816496580927726;  // gamma^2 = 2/3
    double delta_cep = 0.0;
    double t_center_ps = 0.0;
    double omega_inv_cm = kDefaultCarrierInvCm;
    double plateau_ratio = kDefaultPlateauRatio;

    void validate() const;

    double gamma_sq() const { return gamma * gamma; }
    void set_gamma_sq(double g2);

    /// Time from the pulse center to where the envelope reaches zero (ps).
    double half_support_ps() const;
    /// Rise (= fall) time of the trapezoid (ps).
    double rise_ps() const;
    /// Peak amplitudes of the fundamental and second harmonic (a.u.).
    double fundamental_amplitude() const;
    double harmonic_amplitude() const;
};

/// One or two pulses. The second pulse is centered t_delay_ps after the first;
/// its own t_center_ps is ignored.
struct FieldConfig {
    std::vector<PulseSpec> pulses;
    double t_delay_ps = 0.0;

    void validate() const;

    /// Pulses with absolute centers filled in.
    std::vector<PulseSpec> placed_pulses() const;
    /// (t_on, t_off) of the total field support in ps.
    std::pair<double, double> window_ps() const;
    /// True if every pulse envelope is zero on [t0, t1].
    bool is_off(double t0_ps, double t1_ps) const;
};

/// Envelope value in [0, 1] at absolute time t.
double envelope(const PulseSpec& pulse, double t_ps);

/// E(t) in a.u. with the carrier phase referenced to each pulse's center.
double instantaneous_field(const PulseSpec& placed_pulse, double t_ps);
double instantaneous_field(const FieldConfig& config, double t_ps);
double instantaneous_field(std::span<const PulseSpec> placed, double t_ps);

/// Field moments averaged over one fundamental optical cycle.
struct FieldMoments {
    double e1 = 0.0;  ///< <E>
    double e2 = 0.0;  ///< <E^2>
    double e3 = 0.0;  ///< <E^3>
};

/// <E> = 0, <E^2> = E0^2 f^2 / 2, <E^3> = 3/4 E0^3 f^3 gamma^2 sqrt(1-gamma^2) cos(delta).
FieldMoments cycle_averaged_coefficients(const PulseSpec& placed_pulse, double t_ps);

/// Same average for the summed field of all pulses. Overlapping pulses interfere
/// through their complex fundamental and harmonic amplitudes.
FieldMoments cycle_averaged_coefficients(const FieldConfig& config, double t_ps);
FieldMoments cycle_averaged_coefficients(std::span<const PulseSpec> placed, double t_ps);

/// Literal powers of E(t).
FieldMoments instantaneous_moments(const FieldConfig& config, double t_ps);

/// 2 pi / (2 omega) for the given carrier, in ps.
double harmonic_period_ps(double omega_inv_cm);

} // namespace rotalign
