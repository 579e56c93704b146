#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rotalign/basis.hpp"

namespace rotalign {

/// <psi| cos^k(theta) |psi> for k = 1 (orientation) or 2 (alignment).
/// Throws DomainError for any other k.
double expectation(const RotorState& state, const CosOperators& ops, int k);
double expectation(const ComplexVector& coeffs, const CosOperators& ops, int k);

/// Sampled observables of one state or of a thermal mixture.
struct ObservableSeries {
    std::vector<double> times_ps;
    std::vector<double> orientation;  ///< <cos theta>
    std::vector<double> alignment;    ///< <cos^2 theta>
    std::vector<std::vector<double>> envelopes;  ///< one trace per pulse
    std::pair<double, double> pulse_window{0.0, 0.0};  ///< (t_on, t_off) in ps

    std::size_t size() const { return times_ps.size(); }
    void validate() const;
};

struct WeightedSeries {
    double weight = 0.0;
    const ObservableSeries* series = nullptr;
};

/// Pointwise weighted sum, accumulated in input order. Envelopes and the
/// pulse window are taken from the first entry.
/// Throws StructuralError if the time grids differ.
ObservableSeries thermal_average(std::span<const WeightedSeries> members);

inline constexpr double kNotFound = -1.0;

struct ExtremaSummary {
    double max_align_during = 0.0;
    double max_align_after = 0.0;
    double max_orient_pos_after = 0.0;  ///< largest <cos theta> after the field
    double max_orient_neg_after = 0.0;  ///< most negative <cos theta>, reported as a magnitude
    double t_align_during = kNotFound;
    double t_align_after = kNotFound;
    double t_orient_pos_after = kNotFound;
    double t_orient_neg_after = kNotFound;
    double post_window_ps = 0.0;

    double max_abs_orient_after() const {
        return max_orient_pos_after > max_orient_neg_after ? max_orient_pos_after
                                                           : max_orient_neg_after;
    }
};

/// Extrema during [t_on, t_off] and on (t_off, t_off + post_window].
/// Throws StructuralError if the series stops before t_off + post_window.
ExtremaSummary extract_extrema(const ObservableSeries& series, double post_window_ps);

} // namespace rotalign
