#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

namespace rotalign {

using ComplexVector = Eigen::VectorXcd;

/// Truncated |J, M> basis at fixed M.
struct BasisSpec {
    int j_max = 40;
    int m = 0;
    int pad = 3;
    int n_grid = 0;

    /// Fills n_grid with the default 2 (j_max + pad + 1) Gauss-Legendre nodes.
    static BasisSpec make(int j_max, int m, int pad = 3);

    int j_min() const { return m < 0 ? -m : m; }
    int dim() const { return j_max - j_min() + 1; }
    int index_of(int j) const { return j - j_min(); }
    void validate() const;

    bool operator==(const BasisSpec&) const = default;
};

struct RotorState {
    BasisSpec basis;
    ComplexVector coeffs;  ///< c_J for J = |M| .. j_max
    double time_ps = 0.0;

    /// The field-free eigenstate |J, M>.
    static RotorState eigenstate(const BasisSpec& basis, int j, double time_ps = 0.0);

    double norm() const { return coeffs.norm(); }
};

/// <J+1, M| cos(theta) |J, M>. Throws DomainError if |M| > J.
double cos_matrix_element(int j, int m);

/// cos^k(theta) in the retained basis. Built on a basis padded by `pad`
/// levels so only the last `pad` rows/columns feel the truncation.
struct CosOperators {
    Eigen::MatrixXd c1;
    Eigen::MatrixXd c2;
    Eigen::MatrixXd c3;
};

CosOperators build_cos_operators(const BasisSpec& basis);

/// Writes one operator as CSV with J labels; debugging aid.
void write_operator_csv(std::ostream& out, const BasisSpec& basis, const Eigen::MatrixXd& op);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
QuadratureRule gauss_legendre(int n);

/// Fully normalized associated Legendre functions, int_{-1}^{1} P~_J^M(x)^2 dx = 1,
/// for J = |M| .. j_max at one point. Condon-Shortley phase is not applied.
std::vector<double> normalized_legendre(int j_max, int m, double x);

/// Spectral <-> quadrature-grid map for one fixed M.
class GridTransform {
public:
    explicit GridTransform(const BasisSpec& basis);

    const BasisSpec& basis() const { return basis_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    /// n_grid x dim, entries P~_J^M(x_i).
    const Eigen::MatrixXd& forward_matrix() const { return forward_; }
    /// dim x n_grid, entries w_i P~_J^M(x_i).
    const Eigen::MatrixXd& backward_matrix() const { return backward_; }

    ComplexVector forward(const ComplexVector& coeffs) const;
    ComplexVector backward(const ComplexVector& grid_values) const;

    /// In-place variants working on (real, imag) column pairs; no allocation.
    void forward(const Eigen::MatrixX2d& coeffs, Eigen::MatrixX2d& grid) const;
    void backward(const Eigen::MatrixX2d& grid, Eigen::MatrixX2d& coeffs) const;

private:
    BasisSpec basis_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
    Eigen::MatrixXd forward_;
    Eigen::MatrixXd backward_;
};

} // namespace rotalign
