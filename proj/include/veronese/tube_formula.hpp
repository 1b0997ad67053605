#pragma once

#include <map>
#include <vector>

#include "veronese/tensor_space.hpp"

namespace veronese {

/// Reach of the spherical Veronese variety inside S^N, in radians.
/// rho1 is the focal radius 2^{-1/2} sqrt(1 + 1/(d-1)), rho2 = pi/4 is half
/// the shortest orthogonal geodesic chord, and the reach is their minimum:
/// pi/4 for 2 <= d <= 5, rho1 for d >= 6.
struct ReachResult {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double rho = 0.0;
};

ReachResult reach(const SpaceParams& params);

/// Volume of the n-dimensional spherical Veronese variety with respect to the
/// Bombieri-Weyl metric: d^{n/2} Vol(S^n).
double veronese_volume(const SpaceParams& params);

/// Volume of the unit sphere S^m, and its logarithm (stable for large m).
double sphere_volume(Eigen::Index m);
double log_sphere_volume(Eigen::Index m);

/// The universal spherical tube function
///   J_{N,k}(eps) = int_0^{tan eps} t^{k-1} / (1+t^2)^{(N+1)/2} dt
///                = int_0^eps sin^{k-1} cos^{N-k},
/// for 0 <= eps <= pi/2 and 1 <= k <= N. Increasing in eps, J(0) = 0.
/// Integrated adaptively on the t-form; the sin/cos form takes over when
/// tan(eps) is too large to be usable.
double j_integral(Eigen::Index N, Eigen::Index k, double eps);

/// Euclidean counterpart, eps^k.
double j_integral_euclidean(Eigen::Index k, double eps);

/// Curvature coefficient K_{N-n+j} of the spherical Veronese:
///
///   (-1)^{j/2} d^{n/2} ((d-1)/d)^{j/2} 2^{n+2-j} pi^{N/2} Gamma(n/2+1)
///   -----------------------------------------------------------------
///      Gamma(j/2+1) Gamma(n+1-j) Gamma((N+j-n)/2)
///
/// for even j in [0, n]; zero for every other j. Gamma products are evaluated
/// in log space with the sign tracked separately.
double curvature_coefficient(const SpaceParams& params, int j);

/// The nonzero curvature coefficients, keyed by the offset j (even, in [0,n]).
struct CurvatureTable {
  int n = 0;
  int d = 0;
  Eigen::Index N = 0;
  std::map<int, double> k_by_j;
};

CurvatureTable curvature_table(const SpaceParams& params);

/// A value together with the flag telling whether the query was inside the
/// range where the formula is exact. Out-of-range values are the analytic
/// continuation of the formula and carry no guarantee.
struct RangedValue {
  double value = 0.0;
  bool valid_range = true;
};

/// Volume of the spherical tube of radius eps around the Veronese variety,
/// sum over even j of K_{N-n+j} * J_{N,N-n+j}(eps). Exact for eps below the
/// reach; accepted up to pi/2 with valid_range = false beyond the reach.
RangedValue tube_volume(const SpaceParams& params, double eps);

/// Probability that a Bombieri-Weyl random symmetric tensor T lies within
/// Frobenius distance delta * ||T|| of the rank-one locus. Equals
/// tube_volume(params, arcsin delta) / Vol(S^N); exact while
/// arcsin(delta) < reach.
RangedValue prob_close_rank_one(const SpaceParams& params, double delta);

/// Rational normal curve case (n = 1): sqrt(d) * delta^{d-1}, exact for
/// arcsin(delta) <= reach.
RangedValue prob_rational_curve(int d, double delta);

/// Closed form for 3x3 symmetric matrices (n = 2, d = 2),
///   (2 delta sqrt(1-delta^2) (14 delta^2 - 3) + 6 arctan(delta/sqrt(1-delta^2)))
///   / (3 pi),
/// valid for 0 <= delta <= 1/sqrt(2).
double prob_sym3_matrices(double delta);

/// Expansion of E[det(I_n - lambda Q)] over GOE(n) in powers of lambda:
/// coeffs[j] = 0 for odd j and (-1)^k (2k)!/(2^{2k} k!) C(n,2k) for j = 2k.
struct DetExpansionPoly {
  int n = 0;
  std::vector<double> coeffs;

  double operator()(double lambda) const;
};

DetExpansionPoly goe_det_expectation(int n);

/// E[g_j(Q)] for the degree-j coefficient polynomials of
/// det(I - lambda Q) = sum_j (-1)^j lambda^j g_j(Q): zero for odd j,
/// (-1)^{j/2} 2^{-j} j!/(j/2)! C(n,j) for even j in [0, n].
double expected_gj(int n, int j);

/// Lower bound on the probability that a random symmetric tensor admits a
/// unique best rank-one approximation: the normalized volume of the tube of
/// radius equal to the reach.
double unique_approx_lower_bound(const SpaceParams& params);

}  // namespace veronese
