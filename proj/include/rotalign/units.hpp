#pragma once

#include <numbers>

// Conversions between laboratory units and the atomic units used internally.
// Times cross the public boundary in picoseconds, intensities in W/cm^2.

namespace rotalign::units {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double kSpeedOfLightCmPerS = 2.99792458e10;
inline constexpr double kHartreeInvCm = 219474.6313632;
inline constexpr double kBohrAngstrom = 0.529177210903;
inline constexpr double kDebyePerAu = 2.541746473;
inline constexpr double kBoltzmannInvCmPerK = 0.6950348004;
/// Intensity of a field with peak amplitude of one atomic unit, 1/2 eps0 c E_au^2.
inline constexpr double kAtomicIntensityWcm2 = 3.50944552e16;

/// Atomic unit of first hyperpolarizability, e^3 a0^3 / E_h^2, in esu.
inline constexpr double kHyperpolarizabilityAuEsu = 8.639220678e-33;
inline constexpr double kAngstrom5Cm5 = 1e-40;

/// hbar / E_h, derived from c and the hartree wavenumber so that
/// rotational periods agree whether computed in cm^-1 or in atomic units.
inline constexpr double kAuTimeSeconds = 1.0 / (2.0 * kPi * kSpeedOfLightCmPerS * kHartreeInvCm);
inline constexpr double kAuTimePs = kAuTimeSeconds * 1e12;

inline constexpr double kBohr3Angstrom3 = kBohrAngstrom * kBohrAngstrom * kBohrAngstrom;
inline constexpr double kBohr5Angstrom5 = kBohr3Angstrom3 * kBohrAngstrom * kBohrAngstrom;

constexpr double ps_to_au(double ps) { return ps / kAuTimePs; }
constexpr double au_to_ps(double au) { return au * kAuTimePs; }
constexpr double fs_to_ps(double fs) { return fs * 1e-3; }

constexpr double wavenumber_to_au(double inv_cm) { return inv_cm / kHartreeInvCm; }
constexpr double au_to_wavenumber(double au) { return au * kHartreeInvCm; }

constexpr double debye_to_au(double debye) { return debye / kDebyePerAu; }
constexpr double au_to_debye(double au) { return au * kDebyePerAu; }

constexpr double angstrom3_to_au(double a3) { return a3 / kBohr3Angstrom3; }
constexpr double au_to_angstrom3(double au) { return au * kBohr3Angstrom3; }

constexpr double angstrom5_to_au(double a5) { return a5 / kBohr5Angstrom5; }
constexpr double au_to_angstrom5(double au) { return au * kBohr5Angstrom5; }

constexpr double esu_to_hyperpolarizability_au(double esu) { return esu / kHyperpolarizabilityAuEsu; }

/// Peak field amplitude (atomic units) for a total peak intensity in W/cm^2.
/// Throws DomainError for negative or non-finite input.
double intensity_to_peak_field(double intensity_wcm2);

double peak_field_to_intensity(double field_au);

/// kT in cm^-1.
constexpr double thermal_energy_inv_cm(double kelvin) { return kBoltzmannInvCmPerK * kelvin; }

} // namespace rotalign::units
