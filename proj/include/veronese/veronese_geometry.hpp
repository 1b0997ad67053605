#pragma once

#include <Eigen/Core>

#include <vector>

#include "veronese/tensor_space.hpp"

namespace veronese {

/// Index bookkeeping at the base point x_0^d. The canonical basis splits into
/// the base monomial itself, the n tangent directions x_0^{d-1} x_i, the
/// n(n+1)/2 monomials x_0^{d-2} x_i x_j (the W part of the normal space, a
/// copy of Sym(n)) and everything with alpha_0 < d - 2 (the P part, on which
/// the second fundamental form vanishes). For d = 2 the P part is empty.
///
/// All geometry here is computed at x_0^d only: the orthogonal group acts
/// transitively on the Veronese by ambient isometries, so the extrinsic
/// picture is the same at every point.
struct NormalSplit {
  Eigen::Index base_index = 0;
  std::vector<Eigen::Index> tangent_idx;
  std::vector<Eigen::Index> w_idx;
  std::vector<Eigen::Index> p_idx;
};

NormalSplit normal_split(const SpaceParams& params);

/// Matrix of the Weingarten operator at x_0^d along the normal direction eta,
/// in the orthonormal tangent basis e_i = sqrt(d) x_0^{d-1} x_i:
///
///   L_ii = sqrt(2 (d-1)/d) * eta_{(d-2, ..., 2 at i, ...)},
///   L_ij = sqrt((d-1)/d)   * eta_{(d-2, ..., 1 at i, ..., 1 at j, ...)},
///
/// linear in eta; coefficients of eta on P contribute nothing. Throws if eta
/// has support on x_0^d or on the tangent directions. With eta standard
/// Gaussian on W this makes L distributed as sqrt(2) sqrt((d-1)/d) GOE(n).
///
/// Any orthogonal change of the tangent basis conjugates L without changing
/// its spectrum; this fixed basis is the one used everywhere in the library.
Eigen::MatrixXd weingarten(const SpaceParams& params, const BWPolynomial& eta);

using WeingartenMatrix = Eigen::MatrixXd;

/// The n unit polynomials sqrt(d) x_0^{d-1} x_i: an orthonormal basis of the
/// tangent space at x_0^d, orthogonal to x_0^d itself.
std::vector<BWPolynomial> tangent_basis(const SpaceParams& params);

/// sqrt(d): a unit-speed curve on S^n maps to a speed-sqrt(d) curve on the
/// Veronese.
double pullback_factor(const SpaceParams& params);

/// Norm of the projected second derivative of an arclength Veronese geodesic,
/// sqrt(2) sqrt((d-1)/d). Its reciprocal is the focal radius rho1.
double geodesic_curvature_norm(const SpaceParams& params);

}  // namespace veronese
