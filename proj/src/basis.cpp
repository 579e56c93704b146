#include "rotalign/basis.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "rotalign/errors.hpp"
#include "rotalign/units.hpp"

namespace rotalign {

BasisSpec BasisSpec::make(int j_max, int m, int pad) {
    BasisSpec b;
    b.j_max = j_max;
    b.m = m;
    b.pad = pad;
    b.n_grid = 2 * (j_max + pad + 1);
    b.validate();
    return b;
}

void BasisSpec::validate() const {
    if (j_max < 0 || pad < 0) {
        throw DomainError("basis: j_max and pad must be non-negative");
    }
    if (std::abs(m) > j_max) {
        throw DomainError("basis: |M| = " + std::to_string(std::abs(m)) + " exceeds j_max = " +
                          std::to_string(j_max));
    }
    if (n_grid < j_max + pad + 1) {
        throw DomainError("basis: n_grid must be at least j_max + pad + 1");
    }
}

RotorState RotorState::eigenstate(const BasisSpec& basis, int j, double time_ps) {
    basis.validate();
    if (j < basis.j_min() || j > basis.j_max) {
        throw DomainError("eigenstate J = " + std::to_string(j) + " outside the basis");
    }
    RotorState s;
    s.basis = basis;
    s.coeffs = ComplexVector::Zero(basis.dim());
    s.coeffs(basis.index_of(j)) = 1.0;
    s.time_ps = time_ps;
    return s;
}

double cos_matrix_element(int j, int m) {
    if (j < 0 || std::abs(m) > j) {
        throw DomainError("cos_matrix_element: need J >= |M|, got J = " + std::to_string(j) +
                          ", M = " + std::to_string(m));
    }
    const double jp = j + 1.0;
    const double mm = static_cast<double>(m) * m;
    return std::sqrt((jp * jp - mm) / ((2.0 * j + 1.0) * (2.0 * j + 3.0)));
}

CosOperators build_cos_operators(const BasisSpec& basis) {
    basis.validate();
    const int j0 = basis.j_min();
    const int n = basis.dim();
    const int np = n + basis.pad;

    Eigen::MatrixXd c1 = Eigen::MatrixXd::Zero(np, np);
    for (int i = 0; i + 1 < np; ++i) {
        const double a = cos_matrix_element(j0 + i, basis.m);
        c1(i, i + 1) = a;
        c1(i + 1, i) = a;
    }
    const Eigen::MatrixXd c2 = c1 * c1;
    const Eigen::MatrixXd c3 = c2 * c1;

    // Products of symmetric matrices are symmetric only up to summation order.
    auto restrict_sym = [n](const Eigen::MatrixXd& a) -> Eigen::MatrixXd {
        const Eigen::MatrixXd top = a.topLeftCorner(n, n);
        return 0.5 * (top + top.transpose());
    };
    CosOperators ops;
    ops.c1 = c1.topLeftCorner(n, n);
    ops.c2 = restrict_sym(c2);
    ops.c3 = restrict_sym(c3);
    // Parity: cos and cos^3 only couple J to J +- odd, cos^2 to J +- even.
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if ((i + k) % 2 == 0) {
                ops.c1(i, k) = 0.0;
                ops.c3(i, k) = 0.0;
            } else {
                ops.c2(i, k) = 0.0;
            }
        }
    }
    return ops;
}

void write_operator_csv(std::ostream& out, const BasisSpec& basis, const Eigen::MatrixXd& op) {
    out << "J";
    for (int k = 0; k < op.cols(); ++k) {
        out << ',' << basis.j_min() + k;
    }
    out << '\n';
    out.precision(17);
    for (int i = 0; i < op.rows(); ++i) {
        out << basis.j_min() + i;
        for (int k = 0; k < op.cols(); ++k) {
            out << ',' << op(i, k);
        }
        out << '\n';
    }
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) {
        throw DomainError("gauss_legendre: need at least one node");
    }
    QuadratureRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(units::kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p0 = 1.0;
                p1 = x;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Re-evaluate the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

std::vector<double> normalized_legendre(int j_max, int m, double x) {
    const int am = std::abs(m);
    if (am > j_max) {
        throw DomainError("normalized_legendre: |M| exceeds j_max");
    }
    std::vector<double> out(static_cast<std::size_t>(j_max - am + 1), 0.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
    double p = 1.0 / std::sqrt(2.0);
    for (int k = 1; k <= am; ++k) {
        p *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    }
    out[0] = p;
    if (j_max == am) {
        return out;
    }
    // x P_J = a_J P_{J+1} + a_{J-1} P_{J-1}, with a_J = <J+1|cos|J>.
    double prev = 0.0;
    double cur = p;
    double a_prev = 0.0;
    for (int j = am; j < j_max; ++j) {
        const double a = cos_matrix_element(j, m);
        const double next = (x * cur - a_prev * prev) / a;
        out[static_cast<std::size_t>(j - am + 1)] = next;
        prev = cur;
        cur = next;
        a_prev = a;
    }
    return out;
}

GridTransform::GridTransform(const BasisSpec& basis) : basis_(basis) {
    basis_.validate();
    const auto rule = gauss_legendre(basis_.n_grid);
    const int ng = basis_.n_grid;
    const int n = basis_.dim();
    nodes_ = Eigen::Map<const Eigen::VectorXd>(rule.nodes.data(), ng);
    weights_ = Eigen::Map<const Eigen::VectorXd>(rule.weights.data(), ng);
    forward_.resize(ng, n);
    for (int i = 0; i < ng; ++i) {
        const auto row = normalized_legendre(basis_.j_max, basis_.m, nodes_(i));
        for (int k = 0; k < n; ++k) {
            forward_(i, k) = row[static_cast<std::size_t>(k)];
        }
    }
    backward_ = forward_.transpose() * weights_.asDiagonal();
}

ComplexVector GridTransform::forward(const ComplexVector& coeffs) const {
    if (coeffs.size() != forward_.cols()) {
        throw StructuralError("forward transform: coefficient length mismatch");
    }
    return forward_.cast<std::complex<double>>() * coeffs;
}

ComplexVector GridTransform::backward(const ComplexVector& grid_values) const {
    if (grid_values.size() != backward_.cols()) {
        throw StructuralError("backward transform: grid length mismatch");
    }
    return backward_.cast<std::complex<double>>() * grid_values;
}

void GridTransform::forward(const Eigen::MatrixX2d& coeffs, Eigen::MatrixX2d& grid) const {
    grid.noalias() = forward_ * coeffs;
}

void GridTransform::backward(const Eigen::MatrixX2d& grid, Eigen::MatrixX2d& coeffs) const {
    coeffs.noalias() = backward_ * grid;
}

} // namespace rotalign
