#include <doctest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rotalign/rotalign.hpp"

using namespace rotalign;

namespace {

constexpr double kPi = std::numbers::pi;

PulseSpec plateau_pulse(double g2, double delta = 0.0) {
    PulseSpec p;
    p.tau_ps = 2.0;
    p.set_gamma_sq(g2);
    p.delta_cep = delta;
    return p;
}

} // namespace

TEST_CASE("conversion reference values") {
    auto hbr = hbr_preset();
    const auto in = convert_to_internal(hbr);
    CHECK(in.b == doctest::Approx(3.8038e-5).epsilon(1e-4));
    CHECK(in.alpha_par == doctest::Approx(24.565).epsilon(1e-4));
    CHECK(units::intensity_to_peak_field(7e13) == doctest::Approx(0.04466).epsilon(1e-3));

    hbr.mu0_debye = 0.0;
    CHECK(convert_to_internal(hbr).mu0 == 0.0);

    auto m = hbr_preset();
    const double t = rotational_period_ps(m);
    m.b_inv_cm *= 2;
    CHECK(rotational_period_ps(m) == doctest::Approx(t / 2));
    m.b_inv_cm = 1.0;
    CHECK(rotational_period_ps(m) == doctest::Approx(16.678).epsilon(1e-4));
}

TEST_CASE("ensemble reference values") {
    const auto e = build_ensemble(hbr_preset(), 30.0);
    double p0 = 0.0, p1 = 0.0;
    std::vector<double> j1;
    for (const auto& x : e.entries) {
        if (x.j == 0) p0 += x.weight;
        if (x.j == 1) {
            p1 += x.weight;
            j1.push_back(x.weight);
        }
    }
    CHECK(p1 / p0 == doctest::Approx(1.347).epsilon(1e-3));
    REQUIRE(j1.size() == 3);
    CHECK(j1[0] == j1[1]);
    CHECK(j1[1] == j1[2]);

    int last = 0;
    for (double t : {0.0, 1.0, 5.0, 10.0, 30.0, 100.0, 300.0}) {
        const int jm = build_ensemble(hbr_preset(), t).max_j();
        CHECK(jm >= last);
        last = jm;
    }
}

TEST_CASE("matrix element reference values") {
    CHECK(cos_matrix_element(0, 0) == doctest::Approx(0.57735).epsilon(1e-5));
    CHECK(cos_matrix_element(1, 1) == doctest::Approx(0.44721).epsilon(1e-5));
    CHECK(cos_matrix_element(5, 5) == doctest::Approx(std::sqrt(11.0 / 143.0)).epsilon(1e-14));

    const auto basis = BasisSpec::make(12, 0);
    const auto ops = build_cos_operators(basis);
    CHECK(ops.c2(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(ops.c2(2, 0) == doctest::Approx(2.0 / (3.0 * std::sqrt(5.0))).epsilon(1e-14));
    CHECK(ops.c3(1, 0) == doctest::Approx(3.0 / (5.0 * std::sqrt(3.0))).epsilon(1e-14));

    for (int i = 0; i < basis.dim(); ++i) {
        CHECK(ops.c1(i, i) == 0.0);
        CHECK(ops.c3(i, i) == 0.0);
        for (int j = i + 1; j < basis.dim(); j += 2) CHECK(ops.c2(i, j) == 0.0);
    }

    for (int mq : {0, 3}) {
        const auto o = build_cos_operators(BasisSpec::make(30, mq));
        const Eigen::VectorXd e1 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(o.c1).eigenvalues();
        const Eigen::VectorXd e2 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(o.c2).eigenvalues();
        CHECK(e1.minCoeff() > -1.0);
        CHECK(e1.maxCoeff() < 1.0);
        CHECK(e2.minCoeff() > 0.0);
        CHECK(e2.maxCoeff() < 1.0);
    }
}

TEST_CASE("grid transform reference values") {
    const int jmax = 16;
    const GridTransform t0(BasisSpec::make(jmax, 0));
    const auto g = t0.forward(RotorState::eigenstate(t0.basis(), 0).coeffs);
    for (int q = 0; q < g.size(); ++q) CHECK(std::abs(g(q) - 1.0 / std::sqrt(2.0)) < 1e-14);

    for (int m = -jmax; m <= jmax; ++m) {
        const GridTransform t(BasisSpec::make(jmax, m));
        const int dim = t.basis().dim();
        double worst = 0.0;
        for (int i = 0; i < dim; ++i) {
            const ComplexVector e = ComplexVector::Unit(dim, i);
            worst = std::max(worst, (t.backward(t.forward(e)) - e).cwiseAbs().maxCoeff());
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("field identities") {
    const double e0 = units::intensity_to_peak_field(7e13);

    const auto mono = plateau_pulse(1.0, 1.3);
    const double period = 1e12 / (mono.omega_inv_cm * units::kSpeedOfLightCmPerS);
    for (double t : {0.0, 0.1 * period, 0.37 * period}) {
        CHECK(instantaneous_field(mono, t) == doctest::Approx(e0 * std::cos(2 * kPi * t / period)));
    }

    FieldConfig doubled;
    doubled.pulses = {plateau_pulse(2.0 / 3.0), plateau_pulse(2.0 / 3.0)};
    doubled.t_delay_ps = 0.0;
    for (double t : {-0.4, 0.0, 0.0123, 0.5}) {
        CHECK(instantaneous_field(doubled, t) ==
              doctest::Approx(2.0 * instantaneous_field(doubled.pulses[0], t)));
    }

    CHECK(std::abs(cycle_averaged_coefficients(plateau_pulse(2.0 / 3.0, kPi / 2), 0.0).e3) < 1e-20);
    for (double d : {0.0, 0.4, 2.2}) {
        const auto a = cycle_averaged_coefficients(plateau_pulse(0.5, d), 0.1);
        const auto b = cycle_averaged_coefficients(plateau_pulse(0.5, d + kPi), 0.1);
        CHECK(b.e3 == doctest::Approx(-a.e3));
        CHECK(b.e2 == doctest::Approx(a.e2));
    }

    for (double g2 : {0.1, 0.5, 2.0 / 3.0, 0.9}) {
        const auto p = plateau_pulse(g2, 0.7);
        const double bound = e0 * (std::sqrt(g2) + std::sqrt(1 - g2));
        for (int i = 0; i < 2000; ++i) {
            CHECK(std::abs(instantaneous_field(p, -1.5 + 1.5e-3 * i)) <= bound * (1 + 1e-12));
        }
    }

    // gamma^2 sqrt(1 - gamma^2) peaks at 2/3.
    double best = 0.0, arg = 0.0;
    for (int i = 0; i <= 3000; ++i) {
        const double g2 = i / 3000.0;
        const double e3 = cycle_averaged_coefficients(plateau_pulse(g2), 0.0).e3;
        if (e3 > best) {
            best = e3;
            arg = g2;
        }
    }
    CHECK(arg == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("potential limits") {
    const auto mol = convert_to_internal(hbr_preset());
    Eigen::VectorXd x(5);
    x << -0.9, -0.3, 0.0, 0.3, 0.9;
    const auto off = potential_on_grid(mol, FieldMoments{}, x);
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);

    const FieldMoments e{0.01, 0.002, 3e-5};
    const auto v = potential_on_grid(mol, e, x);
    CHECK(v(2) == doctest::Approx(-0.5 * 0.002 * mol.alpha_perp));

    const auto even = cycle_averaged_coefficients(plateau_pulse(1.0), 0.0);
    const auto w = potential_on_grid(mol, even, x);
    CHECK(w(0) == doctest::Approx(w(4)));
    CHECK(w(1) == doctest::Approx(w(3)));
}

TEST_CASE("field-free dynamics") {
    const auto mol = convert_to_internal(hbr_preset());
    FieldConfig f;
    f.pulses = {plateau_pulse(2.0 / 3.0)};
    f.pulses[0].intensity_wcm2 = 0.0;
    const auto basis = BasisSpec::make(40, 0);
    SplitOperator prop(mol, f, PropagationMode::CycleAveraged, basis);
    const double t_rot = rotational_period_ps(mol);

    // Stationary ground state, for any step.
    for (double dt : {1e-4, 0.01, 0.7}) {
        RotorState s = RotorState::eigenstate(basis, 0);
        prop.step(s, dt);
        CHECK(std::abs(std::abs(s.coeffs(0)) - 1.0) < 1e-14);
        CHECK(s.coeffs.tail(basis.dim() - 1).norm() < 1e-14);
    }

    RotorState beat = RotorState::eigenstate(basis, 0);
    beat.coeffs(0) = beat.coeffs(1) = std::sqrt(0.5);
    RotorState half = beat;
    prop.free_evolve(half, t_rot / 2);
    CHECK(expectation(half, prop.operators(), 1) == doctest::Approx(-0.57735).epsilon(1e-5));

    // Exact revival of the coefficient vector.
    RotorState mixed = RotorState::eigenstate(basis, 0);
    for (int j = 0; j < basis.dim(); ++j) mixed.coeffs(j) = {std::sin(j + 1.0), std::cos(2.0 * j)};
    mixed.coeffs.normalize();
    RotorState rev = mixed;
    prop.free_evolve(rev, t_rot);
    CHECK((rev.coeffs - mixed.coeffs).cwiseAbs().maxCoeff() < 1e-9);

    // Forward then backward over a field-free stretch.
    RotorState back = mixed;
    for (int i = 0; i < 500; ++i) prop.step(back, 1e-3);
    for (int i = 0; i < 500; ++i) prop.step(back, -1e-3);
    CHECK((back.coeffs - mixed.coeffs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("norm over a hundred thousand driven steps") {
    const auto mol = convert_to_internal(hbr_preset());
    FieldConfig f;
    f.pulses = {plateau_pulse(2.0 / 3.0)};
    f.pulses[0].tau_ps = 30.0;  // field on throughout
    const auto basis = BasisSpec::make(30, 1);
    SplitOperator prop(mol, f, PropagationMode::CycleAveraged, basis);
    RotorState s = RotorState::eigenstate(basis, 2, -12.5);
    for (int i = 0; i < 100000; ++i) prop.step(s, 0.25e-3);
    CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("observable bounds on driven states") {
    ExperimentConfig c;
    c.field.pulses = {PulseSpec{}};
    c.temperatures = {30.0};
    const auto r = run_case(c);
    const auto [t_on, t_off] = r.series.pulse_window;
    for (std::size_t i = 0; i < r.series.size(); ++i) {
        const double a = r.series.alignment[i], o = r.series.orientation[i];
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
        CHECK(std::abs(o) <= 1.0);
        CHECK(o * o <= a + 1e-15);
    }
    CHECK(r.extrema.t_align_after > t_off);
    CHECK(r.extrema.t_orient_pos_after > t_off);
    CHECK(r.extrema.t_orient_neg_after > t_off);
    CHECK(r.extrema.t_align_during >= t_on);

    // One field-free period already holds every extremum, up to where the
    // output samples fall within each period.
    auto longer = c;
    const double t_rot = rotational_period_ps(c.molecule);
    longer.post_window_ps = 4.0 * t_rot;
    const auto series = run_case(longer).series;
    const auto two = extract_extrema(series, 2.0 * t_rot);
    const auto four = extract_extrema(series, 4.0 * t_rot);
    CHECK(four.max_align_after == doctest::Approx(two.max_align_after).epsilon(1e-4));
    CHECK(four.max_orient_pos_after == doctest::Approx(two.max_orient_pos_after).epsilon(1e-4));
    CHECK(four.max_orient_neg_after == doctest::Approx(two.max_orient_neg_after).epsilon(1e-4));
}

TEST_CASE("orientation agrees between field modes within 5%") {
    ExperimentConfig c;
    c.field.pulses = {PulseSpec{}};
    c.temperatures = {1.0};
    c.post_window_ps = 1.0;
    const auto ca = run_case(c);
    c.propagation = PropagationConfig::defaults(PropagationMode::FullField);
    const auto ff = run_case(c);
    CHECK(ff.extrema.max_abs_orient_after() ==
          doctest::Approx(ca.extrema.max_abs_orient_after()).epsilon(0.05));
    CHECK(ff.extrema.max_align_after == doctest::Approx(ca.extrema.max_align_after).epsilon(0.01));
}

TEST_CASE("small synthetic averages") {
    ObservableSeries a, b;
    for (int i = 0; i < 4; ++i) {
        a.times_ps.push_back(i);
        b.times_ps.push_back(i);
        a.alignment.push_back(0.2);
        b.alignment.push_back(0.6);
        a.orientation.push_back(0.0);
        b.orientation.push_back(0.0);
    }
    const std::vector<WeightedSeries> w{{0.5, &a}, {0.5, &b}};
    for (double v : thermal_average(w).alignment) CHECK(v == doctest::Approx(0.4));
    const std::vector<WeightedSeries> one{{1.0, &a}};
    CHECK(thermal_average(one).alignment == a.alignment);

    ObservableSeries s;
    const double t_rot = 2.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.005 * i;
        s.times_ps.push_back(t);
        s.alignment.push_back(t > 0.5 ? 1.0 / 3.0 + 0.1 * std::sin(2 * kPi * (t - 0.5) / t_rot) : 1.0 / 3.0);
        s.orientation.push_back(0.0);
    }
    s.pulse_window = {0.0, 0.5};
    CHECK(extract_extrema(s, 2 * t_rot).max_align_after == doctest::Approx(0.4333).epsilon(1e-4));
}
