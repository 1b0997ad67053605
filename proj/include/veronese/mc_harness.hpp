#pragma once

#include <Eigen/Core>

#include <vector>

#include "veronese/ensembles.hpp"
#include "veronese/rank_one_solver.hpp"
#include "veronese/tensor_space.hpp"

namespace veronese {

/// Monte-Carlo estimate with its statistical context. z_score measures the
/// discrepancy to the closed-form reference in units of the standard error;
/// the confidence interval is the normal approximation at ci_z (1.96 for
/// reports; the acceptance suite gates at 3).
struct McReport {
  double estimate = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double ci_z = 1.96;
  long long n_samples = 0;
  SeedSpec seed{};
  double reference = 0.0;
  double z_score = 0.0;
  /// Set when the per-sample oracle is the multistart solver (n >= 2, d >= 3),
  /// which certifies only an upper bound on each distance.
  bool heuristic_oracle = false;
  /// Samples whose solver run did not reach the stationarity tolerance.
  long long non_converged = 0;
};

/// One sample of an mc_probability run, for the per-sample CSV output.
struct ProbabilitySample {
  long long index = 0;
  double distance = 0.0;
  bool close = false;
};

/// Empirical probability that a Bombieri-Weyl tensor lies within relative
/// distance delta of rank one, against the closed-form reference. Sample i
/// draws its instance from stream i of the master seed; the solver restarts
/// of sample i draw from stream i of a salted master, so results are a pure
/// function of (seed, n_samples) and never of the worker count. Requires
/// arcsin(delta) below the reach, where the reference is exact.
McReport mc_probability(const SpaceParams& params, double delta, long long n_samples,
                        SeedSpec seed, const SolverOptions& opts = {}, int workers = 0,
                        std::vector<ProbabilitySample>* per_sample = nullptr);

/// Sample mean of det(I - lambda Q) over GOE(n) against the closed-form
/// expectation polynomial.
McReport mc_goe_det(int n, double lambda, long long n_samples, SeedSpec seed,
                    int workers = 0);

/// Empirical entrywise variances of the Weingarten matrix along Gaussian
/// normals in W. References: 2(d-1)/d on the diagonal, (d-1)/d off it.
/// max_abs_z is the largest |z| over entries, with the Gaussian-variance
/// standard error ref * sqrt(2/n).
struct WeingartenStats {
  long long n_samples = 0;
  SeedSpec seed{};
  Eigen::MatrixXd variance;
  double ref_diag = 0.0;
  double ref_offdiag = 0.0;
  double max_abs_z = 0.0;
};

WeingartenStats mc_weingarten_stats(const SpaceParams& params, long long n_samples,
                                    SeedSpec seed, int workers = 0);

/// Deterministic finite-difference check of a scalar geometric invariant.
/// max_rel_error is taken over the trials; convergence_ratio is the factor by
/// which the error shrinks when the (coarse diagnostic) step is halved,
/// close to 4 for the central schemes used here.
struct FiniteDiffReport {
  double reference = 0.0;
  double max_rel_error = 0.0;
  double convergence_ratio = 0.0;
  int trials = 0;
};

/// Speed of t -> veronese(cos(t) a + sin(t) b) at t = 0 for random orthonormal
/// pairs (a, b), central differences with h = 1e-5, against sqrt(d).
FiniteDiffReport check_metric_pullback(const SpaceParams& params, SeedSpec seed = {},
                                       int trials = 100);

/// Norm of the tangentially projected second derivative of the arclength
/// Veronese geodesic t -> veronese(great_circle(t / sqrt(d))), second central
/// differences with h = 1e-3, against sqrt(2) sqrt((d-1)/d).
FiniteDiffReport check_geodesic_curvature(const SpaceParams& params, SeedSpec seed = {},
                                          int trials = 20);

}  // namespace veronese
