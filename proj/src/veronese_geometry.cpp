#include "veronese/veronese_geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace veronese {

NormalSplit normal_split(const SpaceParams& params) {
  NormalSplit split;
  const int d = params.d();
  for (Eigen::Index i = 0; i < params.dim(); ++i) {
    const int a0 = params.multi_index(i)[0];
    if (a0 == d) {
      split.base_index = i;
    } else if (a0 == d - 1) {
      split.tangent_idx.push_back(i);
    } else if (a0 == d - 2) {
      split.w_idx.push_back(i);
    } else {
      split.p_idx.push_back(i);
    }
  }
  return split;
}

Eigen::MatrixXd weingarten(const SpaceParams& params, const BWPolynomial& eta) {
  if (eta.params() != params)
    throw std::invalid_argument("weingarten: eta lives in a different space");

  const NormalSplit split = normal_split(params);
  const double tol = 1e-12 * std::max(1.0, eta.norm());
  if (std::abs(eta.coeffs()[split.base_index]) > tol)
    throw std::invalid_argument("weingarten: eta has support on x_0^d");
  for (Eigen::Index i : split.tangent_idx) {
    if (std::abs(eta.coeffs()[i]) > tol)
      throw std::invalid_argument("weingarten: eta has tangential support");
  }

  const int n = params.n();
  const int d = params.d();
  const double diag_scale = std::sqrt(2.0 * (d - 1.0) / d);
  const double off_scale = std::sqrt((d - 1.0) / d);

  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  MultiIndex alpha(static_cast<std::size_t>(n) + 1, 0);
  alpha[0] = d - 2;
  for (int i = 1; i <= n; ++i) {
    alpha[i] = 2;
    L(i - 1, i - 1) = diag_scale * eta.coeffs()[params.index_of(alpha)];
    alpha[i] = 0;
    for (int j = i + 1; j <= n; ++j) {
      alpha[i] = 1;
      alpha[j] = 1;
      const double v = off_scale * eta.coeffs()[params.index_of(alpha)];
      L(i - 1, j - 1) = v;
      L(j - 1, i - 1) = v;
      alpha[i] = 0;
      alpha[j] = 0;
    }
  }
  return L;
}

std::vector<BWPolynomial> tangent_basis(const SpaceParams& params) {
  // sqrt(d) x_0^{d-1} x_i is exactly the basis monomial C(d,alpha)^{1/2} x^alpha
  // for alpha = (d-1, ..., 1 at i, ...), so each element is one unit coefficient.
  std::vector<BWPolynomial> basis;
  basis.reserve(params.n());
  MultiIndex alpha(static_cast<std::size_t>(params.n()) + 1, 0);
  alpha[0] = params.d() - 1;
  for (int i = 1; i <= params.n(); ++i) {
    alpha[i] = 1;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(params.dim());
    c[params.index_of(alpha)] = 1.0;
    basis.emplace_back(params, std::move(c));
    alpha[i] = 0;
  }
  return basis;
}

double pullback_factor(const SpaceParams& params) {
  return std::sqrt(static_cast<double>(params.d()));
}

double geodesic_curvature_norm(const SpaceParams& params) {
  const double d = params.d();
  return std::sqrt(2.0) * std::sqrt((d - 1.0) / d);
}

}  // namespace veronese
