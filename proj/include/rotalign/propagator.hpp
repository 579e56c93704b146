#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "rotalign/basis.hpp"
#include "rotalign/field.hpp"
#include "rotalign/molecule.hpp"
#include "rotalign/observables.hpp"

namespace rotalign {

enum class PropagationMode {
    FullField,      ///< literal oscillating E(t)
    CycleAveraged,  ///< <E>, <E^2>, <E^3> over one optical cycle
};

PropagationMode parse_propagation_mode(std::string_view name);
std::string_view to_string(PropagationMode mode);

struct ConvergencePolicy {
    bool enabled = false;
    double tolerance = 1e-3;
    int max_rounds = 4;  ///< refinements after the first run
};

inline constexpr double kCycleAveragedDtPs = 0.25e-3;
inline constexpr double kMaxSampleStridePs = 2e-3;
inline constexpr double kStepNormTolerance = 1e-8;

struct PropagationConfig {
    PropagationMode mode = PropagationMode::CycleAveraged;
    double dt_ps = kCycleAveragedDtPs;
    double t_start_ps = 0.0;
    double t_end_ps = 0.0;
    int sample_every = 8;
    int j_max = 40;
    ConvergencePolicy convergence;

    /// 0.25 fs with 2 fs sampling when cycle-averaged; (2w period)/64 with the
    /// nearest stride not above 2 fs in full-field mode.
    static PropagationConfig defaults(PropagationMode mode,
                                      double omega_inv_cm = kDefaultCarrierInvCm);

    long long n_steps() const;
    double sample_stride_ps() const { return dt_ps * sample_every; }
    /// Throws ConfigError; in full-field mode dt must resolve the 2w period 32 times.
    void validate(const FieldConfig& field) const;
};

/// V(x) = k0 + k1 x + k2 x^2 + k3 x^3 with x = cos(theta).
struct PotentialCoefficients {
    double k0 = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;

    double operator()(double x) const { return k0 + x * (k1 + x * (k2 + x * k3)); }
};

/// Dipole, polarizability and hyperpolarizability terms for the given field
/// moments (E, E^2, E^3 literally, or their cycle averages).
PotentialCoefficients potential_coefficients(const InternalParams& molecule,
                                             const FieldMoments& moments);

Eigen::VectorXd potential_on_grid(const InternalParams& molecule, const FieldMoments& moments,
                                  const Eigen::VectorXd& grid_x);

/// Strang-split propagator for one fixed M.
class SplitOperator {
public:
    SplitOperator(const InternalParams& molecule, const FieldConfig& field,
                  PropagationMode mode, const BasisSpec& basis);

    const BasisSpec& basis() const { return transform_.basis(); }
    const GridTransform& transform() const { return transform_; }
    const CosOperators& operators() const { return ops_; }

    /// Field moments that enter the potential at time t.
    FieldMoments moments_at(double t_ps) const;

    /// Advances state.time_ps by dt (negative dt runs backwards). Field-free
    /// steps apply the exact rotational phase. Throws NumericalError when the
    /// norm changes by more than kStepNormTolerance.
    void step(RotorState& state, double dt_ps) const;

    /// Exact field-free evolution by an arbitrary interval.
    void free_evolve(RotorState& state, double dt_ps) const;

private:
    void rotational_phase(ComplexVector& c, double dt_au) const;

    InternalParams molecule_;
    FieldConfig field_;
    std::vector<PulseSpec> placed_;
    PropagationMode mode_;
    GridTransform transform_;
    CosOperators ops_;
    Eigen::VectorXd energies_;  ///< B J(J+1) per basis index
    mutable Eigen::MatrixX2d coeff_work_;
    mutable Eigen::MatrixX2d grid_work_;
};

/// Sampled states over [t_start, t_end].
struct Trajectory {
    std::vector<RotorState> states;
    double max_norm_deviation = 0.0;
};

using SampleObserver = std::function<void(const RotorState&)>;

/// Runs the fixed-step loop from `initial` (whose time is reset to t_start).
/// Calls `observer` at step 0 and every sample_every steps after. Returns the
/// largest norm deviation seen.
double propagate(const RotorState& initial, const SplitOperator& prop,
                 const PropagationConfig& config, const SampleObserver& observer);

/// Convenience wrapper storing every sampled state. Ignores convergence control.
Trajectory propagate(const RotorState& initial, const InternalParams& molecule,
                     const FieldConfig& field, const PropagationConfig& config);

struct ConvergenceReport {
    double dt_ps = 0.0;
    int j_max = 0;
    int rounds = 0;  ///< refinement rounds performed
    double residual = 0.0;  ///< last max |change| of sampled observables
    double max_norm_deviation = 0.0;
};

struct MemberTrace {
    ObservableSeries series;
    ConvergenceReport report;
};

/// Propagates |J, M> and records <cos>, <cos^2> on the sample grid. With
/// convergence enabled, refines (dt/2, j_max + 10) until successive runs agree
/// within the tolerance; throws NumericalError carrying the residual otherwise.
MemberTrace propagate_observables(int j, int m, const InternalParams& molecule,
                                  const FieldConfig& field, const PropagationConfig& config);

} // namespace rotalign
