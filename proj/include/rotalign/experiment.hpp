#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotalign/field.hpp"
#include "rotalign/molecule.hpp"
#include "rotalign/observables.hpp"
#include "rotalign/propagator.hpp"

namespace rotalign {

/// Scalars a sweep may vary.
enum class SweepParameter {
    Tau,         ///< all pulses, ps
    GammaSq,     ///< pulse 1
    DeltaCep1,   ///< rad
    DeltaCep2,   ///< rad
    TDelay,      ///< ps
    Intensity,   ///< all pulses, W/cm^2
    Temperature, ///< K
};

SweepParameter parse_sweep_parameter(std::string_view name);
std::string_view to_string(SweepParameter p);
std::string_view unit_of(SweepParameter p);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::Tau;
    std::vector<double> values;  ///< sorted ascending
};

/// A second, coarse axis: one labelled copy of the experiment per value
/// (e.g. trapezoid vs gaussian, or two pulse durations).
struct VariantSpec {
    std::string parameter;            ///< a sweep parameter name or "shape"
    std::vector<std::string> values;  ///< raw values, units included
};

struct ExperimentConfig {
    std::string name = "run";
    MoleculeParams molecule = hbr_preset();
    FieldConfig field;
    /// Place the first pulse so its support starts at t = 0.
    bool auto_center = true;
    std::vector<double> temperatures{1.0};
    PropagationConfig propagation = PropagationConfig::defaults(PropagationMode::CycleAveraged);
    /// Derive t_start / t_end from the pulse window and the post window.
    bool auto_window = true;
    /// Zero selects 2 T_rot.
    double post_window_ps = 0.0;
    double ensemble_epsilon = kDefaultEnsembleEpsilon;
    std::optional<SweepSpec> sweep;
    std::optional<VariantSpec> variants;
    bool write_series = true;
    std::string output_dir = ".";

    void validate() const;
    double resolved_post_window_ps() const;
};

/// Sets one sweep scalar on a copy of the config.
ExperimentConfig with_parameter(ExperimentConfig config, SweepParameter p, double value);

/// Applies one variant value (shape name or a sweep scalar with units).
ExperimentConfig with_variant(ExperimentConfig config, const std::string& parameter,
                              const std::string& value);

/// Fills pulse centers and the propagation window; no further defaults remain.
ExperimentConfig resolve(ExperimentConfig config);

/// One (variant, temperature) realisation of a config.
struct CaseResult {
    std::string variant;  ///< empty without variants
    double temperature_k = 0.0;
    ObservableSeries series;
    ExtremaSummary extrema;
    ConvergenceReport report;  ///< finest dt / j_max used by any member
    std::string error;         ///< empty on success

    bool ok() const { return error.empty(); }
};

struct SweepRow {
    double param = 0.0;
    std::string variant;
    double temperature_k = 0.0;
    ExtremaSummary extrema;
    ConvergenceReport report;
    std::string error;

    bool ok() const { return error.empty(); }
};

struct RunOptions {
    int workers = 0;  ///< 0 picks hardware_concurrency
};

/// Every (variant, temperature) case of a config without sweep, in that order.
/// Member failures are reported in CaseResult::error naming the (J, M) state.
std::vector<CaseResult> run_single(const ExperimentConfig& config, const RunOptions& options = {});

/// First case only; throws the member's error on failure.
CaseResult run_case(const ExperimentConfig& config, const RunOptions& options = {});

/// One row per (variant, temperature, value), ordered by variant, temperature,
/// then value. Failed points keep their row with the error text.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const RunOptions& options = {});

/// Sweep rows plus the full series of each point (when series are wanted).
struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<CaseResult> cases;  ///< parallel to rows when keep_series
};

SweepResult run_sweep_detailed(const ExperimentConfig& config, bool keep_series,
                               const RunOptions& options = {});

} // namespace rotalign
