#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rotalign {

/// How the numbers in MoleculeParams::beta_par / beta_perp are read.
enum class BetaUnits {
    VolumeAngstrom5, ///< hyperpolarizability volume in A^5, divided by a0^5
    AtomicUnits,     ///< already in atomic units
    EsuAsAngstrom5,  ///< number of A^5 read as 1e-40 cm^5 = 1e-40 esu (cm^5/statC)
};

BetaUnits parse_beta_units(std::string_view tag);
std::string_view to_string(BetaUnits units);

/// Laboratory-unit description of a linear rigid rotor.
struct MoleculeParams {
    std::string name;
    double b_inv_cm = 0.0;       ///< rotational constant, cm^-1
    double mu0_debye = 0.0;      ///< permanent dipole, D
    double alpha_par_a3 = 0.0;   ///< polarizability volume along the axis, A^3
    double alpha_perp_a3 = 0.0;  ///< polarizability volume across the axis, A^3
    double beta_par = 0.0;       ///< read according to beta_units
    double beta_perp = 0.0;
    BetaUnits beta_units = BetaUnits::VolumeAngstrom5;
    double gj_even = 1.0;        ///< nuclear-spin degeneracy of even J
    double gj_odd = 1.0;         ///< nuclear-spin degeneracy of odd J

    void validate() const;
};

/// The same molecule in atomic units.
struct InternalParams {
    double b = 0.0;
    double mu0 = 0.0;
    double alpha_par = 0.0;
    double alpha_perp = 0.0;
    double beta_par = 0.0;
    double beta_perp = 0.0;
    double gj_even = 1.0;
    double gj_odd = 1.0;

    double degeneracy(int j) const { return (j % 2 == 0) ? gj_even : gj_odd; }
    double rotational_energy(int j) const { return b * j * (j + 1.0); }
};

InternalParams convert_to_internal(const MoleculeParams& params);

/// Inverse of convert_to_internal; the name and beta unit tag are supplied by the caller.
MoleculeParams convert_from_internal(const InternalParams& internal, BetaUnits beta_units,
                                     std::string name = {});

/// T_rot = 1/(2Bc), in ps.
double rotational_period_ps(const MoleculeParams& params);

/// Same period from the internal constant, pi/B, in ps.
double rotational_period_ps(const InternalParams& internal);

/// HBr with the literal constants used throughout the reference calculations.
MoleculeParams hbr_preset();

/// Looks up a built-in preset by name (case-insensitive). Throws ConfigError.
MoleculeParams molecule_preset(std::string_view name);

struct EnsembleEntry {
    int j = 0;
    int m = 0;
    double weight = 0.0;
};

/// Boltzmann-weighted (J, M) initial states. Entries are ordered by J, then M ascending.
struct ThermalEnsemble {
    std::vector<EnsembleEntry> entries;
    double temperature_k = 0.0;
    double truncation_epsilon = 1e-6;

    int max_j() const;
    double total_weight() const;
};

inline constexpr double kDefaultEnsembleEpsilon = 1e-6;

/// Populates J levels until the omitted Boltzmann tail falls below epsilon.
/// T = 0 gives the single state (0, 0). Throws DomainError on T < 0 or epsilon outside (0, 1).
ThermalEnsemble build_ensemble(const MoleculeParams& params, double temperature_k,
                               double epsilon = kDefaultEnsembleEpsilon);

} // namespace rotalign
