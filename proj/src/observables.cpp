#include "rotalign/observables.hpp"

#include <algorithm>
#include <string>

#include "rotalign/errors.hpp"

namespace rotalign {

namespace {

constexpr double kTimeSlackPs = 1e-9;

} // namespace

double expectation(const ComplexVector& coeffs, const CosOperators& ops, int k) {
    const Eigen::MatrixXd* op = nullptr;
    if (k == 1) {
        op = &ops.c1;
    } else if (k == 2) {
        op = &ops.c2;
    } else {
        throw DomainError("expectation: k must be 1 or 2, got " + std::to_string(k));
    }
    if (coeffs.size() != op->rows()) {
        throw StructuralError("expectation: state and operator dimensions differ");
    }
    const Eigen::VectorXd re = coeffs.real();
    const Eigen::VectorXd im = coeffs.imag();
    return re.dot(*op * re) + im.dot(*op * im);
}

double expectation(const RotorState& state, const CosOperators& ops, int k) {
    return expectation(state.coeffs, ops, k);
}

void ObservableSeries::validate() const {
    const auto n = times_ps.size();
    if (orientation.size() != n || alignment.size() != n) {
        throw StructuralError("observable series columns have different lengths");
    }
    for (const auto& env : envelopes) {
        if (env.size() != n) {
            throw StructuralError("envelope trace length differs from the time grid");
        }
    }
}

ObservableSeries thermal_average(std::span<const WeightedSeries> members) {
    if (members.empty()) {
        throw StructuralError("thermal_average: no ensemble members");
    }
    const ObservableSeries& first = *members.front().series;
    first.validate();
    ObservableSeries out;
    out.times_ps = first.times_ps;
    out.envelopes = first.envelopes;
    out.pulse_window = first.pulse_window;
    out.orientation.assign(first.size(), 0.0);
    out.alignment.assign(first.size(), 0.0);
    for (const auto& m : members) {
        const ObservableSeries& s = *m.series;
        s.validate();
        if (s.times_ps != first.times_ps) {
            throw StructuralError("thermal_average: members sampled on different time grids");
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            out.orientation[i] += m.weight * s.orientation[i];
            out.alignment[i] += m.weight * s.alignment[i];
        }
    }
    return out;
}

ExtremaSummary extract_extrema(const ObservableSeries& series, double post_window_ps) {
    series.validate();
    if (!(post_window_ps > 0.0)) {
        throw DomainError("extract_extrema: post window must be positive");
    }
    const auto [t_on, t_off] = series.pulse_window;
    if (series.times_ps.empty() ||
        series.times_ps.back() < t_off + post_window_ps - kTimeSlackPs) {
        throw StructuralError("extract_extrema: series ends before t_off + post_window");
    }
    ExtremaSummary x;
    x.post_window_ps = post_window_ps;
    bool seen_during = false;
    bool seen_after = false;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.times_ps[i];
        const double a = series.alignment[i];
        const double o = series.orientation[i];
        if (t >= t_on - kTimeSlackPs && t <= t_off + kTimeSlackPs) {
            if (!seen_during || a > x.max_align_during) {
                x.max_align_during = a;
                x.t_align_during = t;
                seen_during = true;
            }
        } else if (t > t_off + kTimeSlackPs && t <= t_off + post_window_ps + kTimeSlackPs) {
            if (!seen_after || a > x.max_align_after) {
                x.max_align_after = a;
                x.t_align_after = t;
            }
            if (!seen_after || o > x.max_orient_pos_after) {
                x.max_orient_pos_after = o;
                x.t_orient_pos_after = t;
            }
            if (!seen_after || -o > x.max_orient_neg_after) {
                x.max_orient_neg_after = -o;
                x.t_orient_neg_after = t;
            }
            seen_after = true;
        }
    }
    if (!seen_after) {
        throw StructuralError("extract_extrema: no samples after the pulse");
    }
    return x;
}

} // namespace rotalign
