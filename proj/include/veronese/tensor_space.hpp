#pragma once

#include <Eigen/Core>

#include <map>
#include <memory>
#include <vector>

namespace veronese {

/// Exponent vector (alpha_0, ..., alpha_n) of a monomial; entries sum to the
/// degree d of the space it lives in.
using MultiIndex = std::vector<int>;

/// All multi-indices of degree d on n+1 variables, in the canonical order:
/// lexicographic, descending in alpha_0, then alpha_1, and so on.
/// The order is a pure function of (n, d) and every file format of this
/// project indexes coefficients by it.
std::vector<MultiIndex> enumerate_multi_indices(int n, int d);

/// The space of homogeneous polynomials of degree d in x_0..x_n, equivalently
/// symmetric d-tensors on R^{n+1}. N + 1 = C(n+d, d) is the dimension of the
/// space; N is always recomputed from (n, d).
///
/// Construction caches the canonical multi-index table and the square roots of
/// the multinomial coefficients C(d, alpha)^{1/2} (computed in log space, so
/// large degrees do not overflow the intermediate factorials). Copies share
/// the tables; the object is immutable after construction.
///
/// n = 0 and d = 1 are rejected: d = 1 makes the Veronese the whole sphere and
/// n = 0 makes it a point, and the reach formula divides by d - 1.
class SpaceParams {
 public:
  SpaceParams(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  Eigen::Index N() const { return N_; }
  /// N + 1, the number of basis coefficients.
  Eigen::Index dim() const { return N_ + 1; }

  const std::vector<MultiIndex>& multi_indices() const { return tables_->indices; }
  const MultiIndex& multi_index(Eigen::Index i) const { return tables_->indices[i]; }
  /// C(d, alpha_i)^{1/2} for the i-th canonical multi-index.
  double sqrt_multinomial(Eigen::Index i) const { return tables_->sqrt_mult[i]; }
  /// Position of alpha in the canonical order; throws std::invalid_argument
  /// if alpha does not belong to this space.
  Eigen::Index index_of(const MultiIndex& alpha) const;

  friend bool operator==(const SpaceParams& a, const SpaceParams& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const SpaceParams& a, const SpaceParams& b) { return !(a == b); }

 private:
  struct Tables {
    std::vector<MultiIndex> indices;
    std::vector<double> sqrt_mult;
    std::map<MultiIndex, Eigen::Index> rank;
  };

  int n_ = 0;
  int d_ = 0;
  Eigen::Index N_ = 0;
  std::shared_ptr<const Tables> tables_;
};

/// A polynomial stored by its coordinates in the Bombieri-Weyl orthonormal
/// basis { C(d,alpha)^{1/2} x^alpha }:
///
///   p = sum_alpha  coeffs[alpha] * C(d,alpha)^{1/2} x^alpha,
///
/// so that ||p||^2 = sum coeffs^2. Under the isometry with symmetric tensors
/// the same coordinates describe the tensor T with p(x) = <T, x tensored with
/// itself d times>, and the Bombieri-Weyl norm equals the Frobenius norm of T.
class BWPolynomial {
 public:
  BWPolynomial(SpaceParams params, Eigen::VectorXd coeffs);

  const SpaceParams& params() const { return params_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double squared_norm() const { return coeffs_.squaredNorm(); }
  double norm() const { return coeffs_.norm(); }

 private:
  SpaceParams params_;
  Eigen::VectorXd coeffs_;
};

/// Bombieri-Weyl inner product, sum of coordinate products. Throws on
/// mismatched spaces.
double bw_inner(const BWPolynomial& p, const BWPolynomial& q);

/// p(x) for any x in R^{n+1}. On the unit sphere this is the generalized
/// Rayleigh quotient T x^d of the associated tensor.
double evaluate(const BWPolynomial& p, const Eigen::VectorXd& x);

/// Euclidean gradient of p at x. Satisfies Euler's identity
/// <grad p(x), x> = d * p(x).
Eigen::VectorXd evaluate_gradient(const BWPolynomial& p, const Eigen::VectorXd& x);

/// Euclidean Hessian of p at x.
Eigen::MatrixXd evaluate_hessian(const BWPolynomial& p, const Eigen::VectorXd& x);

/// The spherical Veronese map: a unit vector a goes to the polynomial
/// <a, x>^d, whose BW coordinates are C(d,alpha)^{1/2} a^alpha. Inputs within
/// 1e-12 of unit norm are renormalized, anything further off is rejected.
BWPolynomial veronese_point(const SpaceParams& params, const Eigen::VectorXd& a);

/// The quadratic form p_Q(x) = x^T Q x of a symmetric matrix, as a d = 2
/// polynomial. This map is a linear isometry: ||p_Q||^2 = tr(Q^2).
BWPolynomial sym_matrix_to_poly(const Eigen::MatrixXd& Q);

/// Inverse of sym_matrix_to_poly. Requires d = 2.
Eigen::MatrixXd poly_to_sym_matrix(const BWPolynomial& p);

}  // namespace veronese
