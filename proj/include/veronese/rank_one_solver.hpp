#pragma once

#include <Eigen/Core>

#include "veronese/ensembles.hpp"
#include "veronese/tensor_space.hpp"

namespace veronese {

struct SolverOptions {
  /// Number of random multistart points; 0 means the default 8 * (n + 1).
  int restarts = 0;
  int max_iters = 500;
  /// Line-search steps below this abort the ascent.
  double step_tol = 1e-12;
  /// Angular grid resolution for the n = 1 path.
  int grid_points = 4096;
  /// Stream feeding the multistart initial points.
  SeedSpec seed{};
  /// Skip the exact d = 2 and n = 1 paths and always run the multistart
  /// ascent (used by the oracle-equivalence tests).
  bool force_iterative = false;
};

/// Outcome of a best rank-one approximation. x_star maximizes |p(x)| on the
/// unit sphere, value = p(x_star) is signed, and the best rank-one
/// approximation of the associated tensor is value * x_star^{tensor d}.
/// distance is the Frobenius/BW distance to the rank-one locus and satisfies
/// distance^2 + value^2 = ||p||^2.
struct RankOneResult {
  Eigen::VectorXd x_star;
  double value = 0.0;
  double abs_value = 0.0;
  double distance = 0.0;
  bool converged = false;
  int restarts_used = 0;
};

/// Best rank-one approximation by generalized Rayleigh quotient maximization.
///
/// Method: d = 2 solves the full symmetric eigenproblem (cyclic Jacobi) and
/// picks the eigenvalue of largest magnitude; n = 1 scans a dense angular
/// grid of grid_points and polishes; everything else runs projected gradient
/// ascent on |p| over the sphere from several random starts, each step chosen
/// by backtracking, keeping the best value seen. The iterative paths finish
/// with a tangent-space Newton polish.
///
/// Throws on the zero polynomial. Non-convergence is reported through
/// converged = false with the best iterate still returned.
RankOneResult best_rank_one(const BWPolynomial& p, const SolverOptions& opts = {});

/// Frobenius distance from a symmetric matrix to the rank-one locus:
/// the square root of the sum of all squared singular values except the
/// largest.
double eckart_young_distance(const Eigen::MatrixXd& Q);

/// Geometric measure of entanglement of the normalized tensor:
/// 1 - max_x |p(x)| = 1 - sqrt(1 - distance^2).
double entanglement_geometric(const BWPolynomial& p, const SolverOptions& opts = {});

/// Logarithmic variant, -log2(max_x |p(x)|^2) for the normalized tensor;
/// +infinity if the maximum vanishes.
double entanglement_log(const BWPolynomial& p, const SolverOptions& opts = {});

/// Eigenvalues and eigenvectors of a symmetric matrix by cyclic Jacobi
/// rotations (off-diagonal Frobenius norm driven below 1e-13 * ||Q||, at most
/// 30 sweeps). Columns of the second member are the eigenvectors.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(const Eigen::MatrixXd& Q);

}  // namespace veronese
