#include "rotalign/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotalign/errors.hpp"
#include "rotalign/units.hpp"

namespace rotalign {

PropagationMode parse_propagation_mode(std::string_view name) {
    if (name == "full-field" || name == "full") {
        return PropagationMode::FullField;
    }
    if (name == "cycle-averaged" || name == "averaged") {
        return PropagationMode::CycleAveraged;
    }
    throw ConfigError("unknown propagation mode '" + std::string(name) + "'");
}

std::string_view to_string(PropagationMode mode) {
    return mode == PropagationMode::FullField ? "full-field" : "cycle-averaged";
}

PropagationConfig PropagationConfig::defaults(PropagationMode mode, double omega_inv_cm) {
    PropagationConfig c;
    c.mode = mode;
    if (mode == PropagationMode::CycleAveraged) {
        c.dt_ps = kCycleAveragedDtPs;
    } else {
        c.dt_ps = harmonic_period_ps(omega_inv_cm) / 64.0;
    }
    c.sample_every = std::max(1, static_cast<int>(std::floor(kMaxSampleStridePs / c.dt_ps + 1e-9)));
    return c;
}

long long PropagationConfig::n_steps() const {
    return std::llround((t_end_ps - t_start_ps) / dt_ps);
}

void PropagationConfig::validate(const FieldConfig& field) const {
    if (!(dt_ps > 0.0) || !std::isfinite(dt_ps)) {
        throw ConfigError("time step must be positive");
    }
    if (!(t_end_ps > t_start_ps)) {
        throw ConfigError("propagation window needs t_end > t_start");
    }
    if (sample_every < 1) {
        throw ConfigError("sample_every must be at least 1");
    }
    if (j_max < 0) {
        throw ConfigError("j_max must be non-negative");
    }
    if (convergence.enabled && !(convergence.tolerance > 0.0)) {
        throw ConfigError("convergence tolerance must be positive");
    }
    if (mode == PropagationMode::FullField) {
        for (const auto& p : field.pulses) {
            const double limit = harmonic_period_ps(p.omega_inv_cm) / 32.0;
            if (dt_ps > limit * (1.0 + 1e-12)) {
                throw ConfigError("full-field mode needs dt <= (2w period)/32 = " +
                                  std::to_string(limit * 1e3) + " fs");
            }
        }
    }
}

PotentialCoefficients potential_coefficients(const InternalParams& mol, const FieldMoments& m) {
    PotentialCoefficients v;
    v.k0 = -0.5 * m.e2 * mol.alpha_perp;
    v.k1 = -mol.mu0 * m.e1 - 0.5 * m.e3 * mol.beta_perp;
    v.k2 = -0.5 * m.e2 * (mol.alpha_par - mol.alpha_perp);
    v.k3 = -(1.0 / 6.0) * m.e3 * (mol.beta_par - 3.0 * mol.beta_perp);
    return v;
}

Eigen::VectorXd potential_on_grid(const InternalParams& molecule, const FieldMoments& moments,
                                  const Eigen::VectorXd& grid_x) {
    const auto v = potential_coefficients(molecule, moments);
    return grid_x.unaryExpr([&v](double x) { return v(x); });
}

SplitOperator::SplitOperator(const InternalParams& molecule, const FieldConfig& field,
                             PropagationMode mode, const BasisSpec& basis)
    : molecule_(molecule),
      field_(field),
      placed_(field.placed_pulses()),
      mode_(mode),
      transform_(basis),
      ops_(build_cos_operators(basis)) {
    field_.validate();
    const int n = basis.dim();
    energies_.resize(n);
    for (int i = 0; i < n; ++i) {
        energies_(i) = molecule_.rotational_energy(basis.j_min() + i);
    }
    coeff_work_.resize(n, 2);
    grid_work_.resize(basis.n_grid, 2);
}

FieldMoments SplitOperator::moments_at(double t_ps) const {
    if (mode_ == PropagationMode::CycleAveraged) {
        return cycle_averaged_coefficients(std::span<const PulseSpec>(placed_), t_ps);
    }
    const double e = instantaneous_field(std::span<const PulseSpec>(placed_), t_ps);
    return {e, e * e, e * e * e};
}

void SplitOperator::rotational_phase(ComplexVector& c, double dt_au) const {
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        c(i) *= std::polar(1.0, -energies_(i) * dt_au);
    }
}

void SplitOperator::free_evolve(RotorState& state, double dt_ps) const {
    rotational_phase(state.coeffs, units::ps_to_au(dt_ps));
    state.time_ps += dt_ps;
}

void SplitOperator::step(RotorState& state, double dt_ps) const {
    if (state.coeffs.size() != energies_.size()) {
        throw StructuralError("step: state does not live in this propagator's basis");
    }
    const double t0 = state.time_ps;
    const double t1 = t0 + dt_ps;
    bool field_on = false;
    for (const auto& p : placed_) {
        const double on = p.t_center_ps - p.half_support_ps();
        const double off = p.t_center_ps + p.half_support_ps();
        if (p.intensity_wcm2 > 0.0 && std::max(t0, t1) > on && std::min(t0, t1) < off) {
            field_on = true;
        }
    }
    const double dt_au = units::ps_to_au(dt_ps);
    if (!field_on) {
        rotational_phase(state.coeffs, dt_au);
        state.time_ps = t1;
        return;
    }

    const double norm_before = state.coeffs.norm();
    rotational_phase(state.coeffs, 0.5 * dt_au);

    coeff_work_.col(0) = state.coeffs.real();
    coeff_work_.col(1) = state.coeffs.imag();
    transform_.forward(coeff_work_, grid_work_);

    const auto v = potential_coefficients(molecule_, moments_at(t0 + 0.5 * dt_ps));
    const auto& x = transform_.nodes();
    for (Eigen::Index i = 0; i < grid_work_.rows(); ++i) {
        const double phase = -v(x(i)) * dt_au;
        const double c = std::cos(phase);
        const double s = std::sin(phase);
        const double re = grid_work_(i, 0);
        const double im = grid_work_(i, 1);
        grid_work_(i, 0) = re * c - im * s;
        grid_work_(i, 1) = re * s + im * c;
    }

    transform_.backward(grid_work_, coeff_work_);
    state.coeffs.real() = coeff_work_.col(0);
    state.coeffs.imag() = coeff_work_.col(1);
    rotational_phase(state.coeffs, 0.5 * dt_au);
    state.time_ps = t1;

    const double drift = std::abs(state.coeffs.norm() - norm_before);
    if (drift > kStepNormTolerance) {
        throw NumericalError("norm drift " + std::to_string(drift) + " in one step at t = " +
                                 std::to_string(t0) + " ps; basis too small for this field",
                             drift);
    }
}

double propagate(const RotorState& initial, const SplitOperator& prop,
                 const PropagationConfig& config, const SampleObserver& observer) {
    if (!(initial.basis == prop.basis())) {
        throw StructuralError("propagate: state basis differs from propagator basis");
    }
    RotorState s = initial;
    s.time_ps = config.t_start_ps;
    const double norm0 = s.coeffs.norm();
    double worst = 0.0;
    const long long n = config.n_steps();
    if (observer) {
        observer(s);
    }
    for (long long k = 1; k <= n; ++k) {
        prop.step(s, config.dt_ps);
        s.time_ps = config.t_start_ps + static_cast<double>(k) * config.dt_ps;
        worst = std::max(worst, std::abs(s.coeffs.norm() - norm0));
        if (observer && k % config.sample_every == 0) {
            observer(s);
        }
    }
    return worst;
}

Trajectory propagate(const RotorState& initial, const InternalParams& molecule,
                     const FieldConfig& field, const PropagationConfig& config) {
    config.validate(field);
    SplitOperator prop(molecule, field, config.mode, initial.basis);
    Trajectory out;
    out.max_norm_deviation = propagate(initial, prop, config, [&out](const RotorState& s) {
        out.states.push_back(s);
    });
    return out;
}

namespace {

MemberTrace run_member(int j, int m, const InternalParams& molecule, const FieldConfig& field,
                       const PropagationConfig& config) {
    const auto basis = BasisSpec::make(config.j_max, m);
    SplitOperator prop(molecule, field, config.mode, basis);
    const auto initial = RotorState::eigenstate(basis, j, config.t_start_ps);
    const auto placed = field.placed_pulses();
    const double stride = config.sample_stride_ps();

    MemberTrace trace;
    auto& series = trace.series;
    series.pulse_window = field.window_ps();
    series.envelopes.resize(placed.size());
    std::size_t index = 0;
    trace.report.max_norm_deviation =
        propagate(initial, prop, config, [&](const RotorState& s) {
            const double t = config.t_start_ps + static_cast<double>(index) * stride;
            ++index;
            series.times_ps.push_back(t);
            series.orientation.push_back(expectation(s, prop.operators(), 1));
            series.alignment.push_back(expectation(s, prop.operators(), 2));
            for (std::size_t p = 0; p < placed.size(); ++p) {
                series.envelopes[p].push_back(envelope(placed[p], t));
            }
        });
    trace.report.dt_ps = config.dt_ps;
    trace.report.j_max = config.j_max;
    return trace;
}

double max_change(const ObservableSeries& a, const ObservableSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(a.orientation[i] - b.orientation[i]));
        worst = std::max(worst, std::abs(a.alignment[i] - b.alignment[i]));
    }
    return worst;
}

} // namespace

MemberTrace propagate_observables(int j, int m, const InternalParams& molecule,
                                  const FieldConfig& field, const PropagationConfig& config) {
    config.validate(field);
    if (j < 0 || std::abs(m) > j || j > config.j_max) {
        throw DomainError("initial state |" + std::to_string(j) + ", " + std::to_string(m) +
                          "> is outside the basis");
    }
    MemberTrace current = run_member(j, m, molecule, field, config);
    if (!config.convergence.enabled) {
        return current;
    }
    PropagationConfig cfg = config;
    double residual = 0.0;
    for (int round = 1; round <= config.convergence.max_rounds; ++round) {
        cfg.dt_ps *= 0.5;
        cfg.sample_every *= 2;
        cfg.j_max += 10;
        MemberTrace refined = run_member(j, m, molecule, field, cfg);
        residual = max_change(current.series, refined.series);
        refined.report.rounds = round;
        refined.report.residual = residual;
        if (residual < config.convergence.tolerance) {
            return refined;
        }
        current = std::move(refined);
    }
    throw NumericalError("no convergence for |J=" + std::to_string(j) + ", M=" +
                             std::to_string(m) + "> after " +
                             std::to_string(config.convergence.max_rounds) +
                             " refinements; residual " + std::to_string(residual),
                         residual);
}

} // namespace rotalign
