#include "veronese/rank_one_solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace veronese {

namespace {

// Tangential part of the gradient of |p| at unit x.
Eigen::VectorXd tangential_abs_gradient(const BWPolynomial& p, const Eigen::VectorXd& x,
                                        double px) {
  const double s = px < 0.0 ? -1.0 : 1.0;
  Eigen::VectorXd g = s * evaluate_gradient(p, x);
  return g - g.dot(x) * x;
}

// Orthonormal basis of the tangent space x^perp: the trailing columns of the
// Householder reflector that sends e_0 to +-x.
Eigen::MatrixXd tangent_frame(const Eigen::VectorXd& x) {
  const int m = static_cast<int>(x.size());
  Eigen::VectorXd v = x;
  v[0] += x[0] >= 0.0 ? 1.0 : -1.0;
  v.normalize();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - 2.0 * v * v.transpose();
  return h.rightCols(m - 1);
}

// Newton refinement of a stationary point of p restricted to the sphere.
// Reduced Hessian T^t Hess(p) T - d p(x) I on the tangent frame T; steps that
// fail to shrink the tangential gradient are rejected.
Eigen::VectorXd newton_polish(const BWPolynomial& p, Eigen::VectorXd x) {
  const int d = p.params().d();
  const int m = static_cast<int>(x.size());
  for (int iter = 0; iter < 12; ++iter) {
    const double px = evaluate(p, x);
    const Eigen::VectorXd grad = evaluate_gradient(p, x);
    const double gn = (grad - grad.dot(x) * x).norm();
    if (gn <= 1e-14 * std::max(1.0, d * p.norm())) break;

    const Eigen::MatrixXd t = tangent_frame(x);
    const Eigen::MatrixXd reduced =
        t.transpose() * evaluate_hessian(p, x) * t -
        d * px * Eigen::MatrixXd::Identity(m - 1, m - 1);
    const Eigen::VectorXd rhs = -t.transpose() * grad;
    const Eigen::VectorXd y = reduced.fullPivLu().solve(rhs);
    if (!y.allFinite() || y.norm() > 0.5) break;

    Eigen::VectorXd x_new = (x + t * y).normalized();
    const Eigen::VectorXd grad_new = evaluate_gradient(p, x_new);
    if ((grad_new - grad_new.dot(x_new) * x_new).norm() >= gn) break;
    x = std::move(x_new);
  }
  return x;
}

struct AscentResult {
  Eigen::VectorXd x;
  double value = 0.0;
};

// Projected gradient ascent on |p| over the sphere with Armijo backtracking,
// finished by the Newton polish.
AscentResult ascend(const BWPolynomial& p, Eigen::VectorXd x, const SolverOptions& opts) {
  const double grad_tol = 1e-10 * p.params().d() * std::max(p.norm(), 1e-300);
  double fx = evaluate(p, x);
  double step = 1.0;
  for (int iter = 0; iter < opts.max_iters; ++iter) {
    const Eigen::VectorXd gt = tangential_abs_gradient(p, x, fx);
    const double gn = gt.norm();
    if (gn <= grad_tol) break;

    bool accepted = false;
    while (step >= opts.step_tol) {
      Eigen::VectorXd x_new = (x + step * gt).normalized();
      const double f_new = evaluate(p, x_new);
      if (std::abs(f_new) >= std::abs(fx) + 1e-4 * step * gn * gn) {
        x = std::move(x_new);
        fx = f_new;
        step = std::min(step * 2.0, 1e6);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  x = newton_polish(p, std::move(x));
  return AscentResult{x, evaluate(p, x)};
}

RankOneResult finalize(const BWPolynomial& p, Eigen::VectorXd x, double value,
                       int restarts_used) {
  RankOneResult r;
  r.x_star = std::move(x);
  r.value = value;
  r.abs_value = std::abs(value);
  r.distance = std::sqrt(std::max(0.0, p.squared_norm() - value * value));
  r.converged = tangential_abs_gradient(p, r.x_star, value).norm() <=
                1e-8 * p.params().d() * p.norm();
  r.restarts_used = restarts_used;
  return r;
}

RankOneResult solve_eigen(const BWPolynomial& p) {
  const Eigen::MatrixXd Q = poly_to_sym_matrix(p);
  auto [evals, evecs] = jacobi_eigen(Q);
  Eigen::Index best = 0;
  evals.cwiseAbs().maxCoeff(&best);
  return finalize(p, evecs.col(best), evals[best], 0);
}

RankOneResult solve_grid(const BWPolynomial& p, const SolverOptions& opts) {
  const int d = p.params().d();
  const int grid = std::max(opts.grid_points, 8);
  // |p| is antipodally symmetric, so theta in [0, pi) covers the circle.
  const double dt = std::numbers::pi / grid;
  const double cd = std::cos(dt);
  const double sd = std::sin(dt);

  std::vector<double> cpow(static_cast<std::size_t>(d) + 1, 1.0);
  std::vector<double> spow(static_cast<std::size_t>(d) + 1, 1.0);
  double c = 1.0;
  double s = 0.0;
  double best_abs = -1.0;
  double best_c = 1.0;
  double best_s = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int k = 1; k <= d; ++k) {
      cpow[k] = cpow[k - 1] * c;
      spow[k] = spow[k - 1] * s;
    }
    // canonical order for n = 1 is alpha = (d-k, k), k = 0..d
    double val = 0.0;
    for (int k = 0; k <= d; ++k)
      val += p.coeffs()[k] * p.params().sqrt_multinomial(k) * cpow[d - k] * spow[k];
    if (std::abs(val) > best_abs) {
      best_abs = std::abs(val);
      best_c = c;
      best_s = s;
    }
    const double cn = c * cd - s * sd;
    s = s * cd + c * sd;
    c = cn;
  }

  Eigen::VectorXd x(2);
  x << best_c, best_s;
  x.normalize();
  x = newton_polish(p, std::move(x));
  return finalize(p, x, evaluate(p, x), 0);
}

RankOneResult solve_multistart(const BWPolynomial& p, const SolverOptions& opts) {
  const int n = p.params().n();
  const int restarts = opts.restarts > 0 ? opts.restarts : 8 * (n + 1);
  StreamRng rng(opts.seed);

  Eigen::VectorXd best_x;
  double best_value = 0.0;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x0(n + 1);
    do {
      for (int k = 0; k <= n; ++k) x0[k] = rng.gaussian();
    } while (x0.norm() < 1e-12);
    x0.normalize();
    AscentResult res = ascend(p, std::move(x0), opts);
    if (!have_best || std::abs(res.value) > std::abs(best_value)) {
      best_value = res.value;
      best_x = std::move(res.x);
      have_best = true;
    }
  }
  return finalize(p, std::move(best_x), best_value, restarts);
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(const Eigen::MatrixXd& Q) {
  const int m = static_cast<int>(Q.rows());
  Eigen::MatrixXd a = Q;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(m, m);
  const double target = 1e-13 * std::max(Q.norm(), 1e-300);

  for (int sweep = 0; sweep < 30; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= target) break;

    for (int i = 0; i < m - 1; ++i) {
      for (int j = i + 1; j < m; ++j) {
        if (a(i, j) == 0.0) continue;
        const double theta = (a(j, j) - a(i, i)) / (2.0 * a(i, j));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const double aij = a(i, j);

        a(i, i) -= t * aij;
        a(j, j) += t * aij;
        a(i, j) = 0.0;
        a(j, i) = 0.0;
        for (int k = 0; k < m; ++k) {
          if (k == i || k == j) continue;
          const double aki = a(k, i);
          const double akj = a(k, j);
          a(k, i) = cs * aki - sn * akj;
          a(i, k) = a(k, i);
          a(k, j) = sn * aki + cs * akj;
          a(j, k) = a(k, j);
        }
        for (int k = 0; k < m; ++k) {
          const double vki = v(k, i);
          const double vkj = v(k, j);
          v(k, i) = cs * vki - sn * vkj;
          v(k, j) = sn * vki + cs * vkj;
        }
      }
    }
  }

  Eigen::VectorXd evals = a.diagonal();
  return {std::move(evals), std::move(v)};
}

RankOneResult best_rank_one(const BWPolynomial& p, const SolverOptions& opts) {
  if (p.norm() == 0.0)
    throw std::invalid_argument("best_rank_one: zero polynomial");
  if (opts.max_iters < 1 || opts.step_tol <= 0.0 || opts.restarts < 0)
    throw std::invalid_argument("best_rank_one: invalid solver options");
  if (!opts.force_iterative) {
    if (p.params().d() == 2) return solve_eigen(p);
    if (p.params().n() == 1) return solve_grid(p, opts);
  }
  return solve_multistart(p, opts);
}

double eckart_young_distance(const Eigen::MatrixXd& Q) {
  const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  if (Q.rows() != Q.cols() ||
      (Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("eckart_young_distance: matrix is not symmetric");
  auto [evals, evecs] = jacobi_eigen(Q);
  const double top = evals.cwiseAbs().maxCoeff();
  return std::sqrt(std::max(0.0, evals.squaredNorm() - top * top));
}

double entanglement_geometric(const BWPolynomial& p, const SolverOptions& opts) {
  const double nrm = p.norm();
  if (nrm == 0.0) throw std::invalid_argument("entanglement_geometric: zero polynomial");
  BWPolynomial unit(p.params(), p.coeffs() / nrm);
  return 1.0 - best_rank_one(unit, opts).abs_value;
}

double entanglement_log(const BWPolynomial& p, const SolverOptions& opts) {
  const double nrm = p.norm();
  if (nrm == 0.0) throw std::invalid_argument("entanglement_log: zero polynomial");
  BWPolynomial unit(p.params(), p.coeffs() / nrm);
  const double v = best_rank_one(unit, opts).abs_value;
  if (v == 0.0) return std::numeric_limits<double>::infinity();
  return -2.0 * std::log2(v);
}

}  // namespace veronese
