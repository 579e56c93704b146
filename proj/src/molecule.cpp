#include "rotalign/molecule.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "rotalign/errors.hpp"
#include "rotalign/units.hpp"

namespace rotalign {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool all_finite(std::initializer_list<double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

} // namespace

BetaUnits parse_beta_units(std::string_view tag) {
    const auto t = lowercase(tag);
    if (t == "as-volume-a5" || t == "as-volume-å5" || t == "as-volume-Å⁵" ||
        t == "volume-a5" || t == "a5") {
        return BetaUnits::VolumeAngstrom5;
    }
    if (t == "atomic-units" || t == "au" || t == "a.u.") {
        return BetaUnits::AtomicUnits;
    }
    if (t == "esu-as-a5" || t == "esu-as-å5") {
        return BetaUnits::EsuAsAngstrom5;
    }
    throw ConfigError("unknown hyperpolarizability unit tag '" + std::string(tag) +
                      "' (expected as-volume-A5, atomic-units or esu-as-A5)");
}

std::string_view to_string(BetaUnits units) {
    switch (units) {
    case BetaUnits::VolumeAngstrom5: return "as-volume-A5";
    case BetaUnits::AtomicUnits: return "atomic-units";
    case BetaUnits::EsuAsAngstrom5: return "esu-as-A5";
    }
    return "?";
}

void MoleculeParams::validate() const {
    if (!all_finite({b_inv_cm, mu0_debye, alpha_par_a3, alpha_perp_a3, beta_par, beta_perp,
                     gj_even, gj_odd})) {
        throw ConfigError("molecule '" + name + "' has non-finite parameters");
    }
    if (b_inv_cm <= 0.0) {
        throw ConfigError("molecule '" + name + "': rotational constant must be positive");
    }
    if (gj_even <= 0.0 || gj_odd < 0.0) {
        throw ConfigError("molecule '" + name + "': degeneracy factors must be non-negative "
                          "with g_even > 0");
    }
}

InternalParams convert_to_internal(const MoleculeParams& params) {
    params.validate();
    InternalParams out;
    out.b = units::wavenumber_to_au(params.b_inv_cm);
    out.mu0 = units::debye_to_au(params.mu0_debye);
    out.alpha_par = units::angstrom3_to_au(params.alpha_par_a3);
    out.alpha_perp = units::angstrom3_to_au(params.alpha_perp_a3);
    switch (params.beta_units) {
    case BetaUnits::VolumeAngstrom5:
        out.beta_par = units::angstrom5_to_au(params.beta_par);
        out.beta_perp = units::angstrom5_to_au(params.beta_perp);
        break;
    case BetaUnits::AtomicUnits:
        out.beta_par = params.beta_par;
        out.beta_perp = params.beta_perp;
        break;
    case BetaUnits::EsuAsAngstrom5:
        out.beta_par = units::esu_to_hyperpolarizability_au(params.beta_par * units::kAngstrom5Cm5);
        out.beta_perp = units::esu_to_hyperpolarizability_au(params.beta_perp * units::kAngstrom5Cm5);
        break;
    }
    out.gj_even = params.gj_even;
    out.gj_odd = params.gj_odd;
    return out;
}

MoleculeParams convert_from_internal(const InternalParams& internal, BetaUnits beta_units,
                                     std::string name) {
    MoleculeParams out;
    out.name = std::move(name);
    out.b_inv_cm = units::au_to_wavenumber(internal.b);
    out.mu0_debye = units::au_to_debye(internal.mu0);
    out.alpha_par_a3 = units::au_to_angstrom3(internal.alpha_par);
    out.alpha_perp_a3 = units::au_to_angstrom3(internal.alpha_perp);
    out.beta_units = beta_units;
    switch (beta_units) {
    case BetaUnits::VolumeAngstrom5:
        out.beta_par = units::au_to_angstrom5(internal.beta_par);
        out.beta_perp = units::au_to_angstrom5(internal.beta_perp);
        break;
    case BetaUnits::AtomicUnits:
        out.beta_par = internal.beta_par;
        out.beta_perp = internal.beta_perp;
        break;
    case BetaUnits::EsuAsAngstrom5:
        out.beta_par = internal.beta_par * units::kHyperpolarizabilityAuEsu / units::kAngstrom5Cm5;
        out.beta_perp = internal.beta_perp * units::kHyperpolarizabilityAuEsu / units::kAngstrom5Cm5;
        break;
    }
    out.gj_even = internal.gj_even;
    out.gj_odd = internal.gj_odd;
    return out;
}

double rotational_period_ps(const MoleculeParams& params) {
    if (!(params.b_inv_cm > 0.0)) {
        throw DomainError("rotational constant must be positive");
    }
    return 1e12 / (2.0 * params.b_inv_cm * units::kSpeedOfLightCmPerS);
}

double rotational_period_ps(const InternalParams& internal) {
    // E_J = B J(J+1): every level spacing is an integer multiple of 2B.
    return units::au_to_ps(units::kPi / internal.b);
}

MoleculeParams hbr_preset() {
    MoleculeParams p;
    p.name = "HBr";
    p.b_inv_cm = 8.3482;
    p.mu0_debye = 0.828;
    p.alpha_par_a3 = 3.64;
    p.alpha_perp_a3 = 3.315;
    p.beta_par = -1.07e9;
    p.beta_perp = 4.3e8;
    // The A^5 figures only give sensible magnitudes when read as esu.
    p.beta_units = BetaUnits::EsuAsAngstrom5;
    p.gj_even = 1.0;
    p.gj_odd = 1.0;
    return p;
}

MoleculeParams molecule_preset(std::string_view name) {
    if (lowercase(name) == "hbr") {
        return hbr_preset();
    }
    throw ConfigError("unknown molecule preset '" + std::string(name) + "'");
}

int ThermalEnsemble::max_j() const {
    int j = 0;
    for (const auto& e : entries) {
        j = std::max(j, e.j);
    }
    return j;
}

double ThermalEnsemble::total_weight() const {
    double s = 0.0;
    for (const auto& e : entries) {
        s += e.weight;
    }
    return s;
}

ThermalEnsemble build_ensemble(const MoleculeParams& params, double temperature_k,
                               double epsilon) {
    if (!std::isfinite(temperature_k) || temperature_k < 0.0) {
        throw DomainError("temperature must be finite and non-negative");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("ensemble truncation epsilon must lie in (0, 1)");
    }
    params.validate();

    ThermalEnsemble ens;
    ens.temperature_k = temperature_k;
    ens.truncation_epsilon = epsilon;
    if (temperature_k == 0.0) {
        ens.entries.push_back({0, 0, 1.0});
        return ens;
    }

    const double kt = units::thermal_energy_inv_cm(temperature_k);
    auto factor = [&](int j) {
        const double g = (j % 2 == 0) ? params.gj_even : params.gj_odd;
        return g * std::exp(-params.b_inv_cm * j * (j + 1.0) / kt);
    };

    // Level populations (2J+1) g_J exp(-E_J/kT) until they underflow relative to the head.
    std::vector<double> level;
    for (int j = 0;; ++j) {
        const double p = (2.0 * j + 1.0) * factor(j);
        level.push_back(p);
        if (j > 0 && p < 1e-300) {
            break;
        }
        if (params.b_inv_cm * j * (j + 1.0) / kt > 745.0) {
            break;
        }
    }
    // Tails summed from the small end.
    std::vector<double> tail(level.size() + 1, 0.0);
    for (std::size_t i = level.size(); i-- > 0;) {
        tail[i] = tail[i + 1] + level[i];
    }
    const double z = tail[0];

    int j_keep = 0;
    while (static_cast<std::size_t>(j_keep + 1) < level.size() &&
           tail[static_cast<std::size_t>(j_keep) + 1] / z >= epsilon) {
        ++j_keep;
    }

    double kept = 0.0;
    for (int j = 0; j <= j_keep; ++j) {
        if (factor(j) > 0.0) {
            kept += level[static_cast<std::size_t>(j)];
        }
    }
    for (int j = 0; j <= j_keep; ++j) {
        const double w = factor(j) / kept;
        if (w <= 0.0) {
            continue;
        }
        for (int m = -j; m <= j; ++m) {
            ens.entries.push_back({j, m, w});
        }
    }
    return ens;
}

} // namespace rotalign
