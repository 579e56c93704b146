#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rotalign/experiment.hpp"

namespace rotalign {

/// Physical kinds accepted in config values. Each kind has a fixed set of
/// unit suffixes; bare numbers are rejected except for Dimensionless.
enum class Quantity {
    Time,            ///< ps, fs, Trot -> ps
    Wavenumber,      ///< cm-1
    Dipole,          ///< D, au -> D
    Polarizability,  ///< A3, au -> A^3
    Intensity,       ///< W/cm2
    Angle,           ///< rad, deg, pi -> rad
    Temperature,     ///< K
    Dimensionless,
};

Quantity quantity_of(SweepParameter p);

/// Parses "<number> <unit>". `t_rot_ps` backs the Trot time unit.
double parse_quantity(std::string_view text, Quantity kind, double t_rot_ps = 0.0);

/// Comma-separated values; items without a unit inherit the last item's unit,
/// so "1, 10, 20, 30 K" works.
std::vector<double> parse_quantity_list(std::string_view text, Quantity kind,
                                        double t_rot_ps = 0.0);

/// Parses the sectioned key = value format. Unknown sections or keys are errors.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Serializes a config in the same format; parse_config(to_config_text(c)) == c.
std::string to_config_text(const ExperimentConfig& config);

} // namespace rotalign
