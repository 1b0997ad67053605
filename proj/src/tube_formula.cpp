#include "veronese/tube_formula.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "veronese/quadrature.hpp"

namespace veronese {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest tan(eps) handled on the t-form; beyond this the sin/cos form of the
// J integrand is better conditioned.
constexpr double kMaxTan = 1e6;

double binomial(int a, int b) {
  if (b < 0 || b > a) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// log of the absolute value of K_{N-n+j} (j even, 0 <= j <= n assumed).
double log_abs_curvature_coefficient(const SpaceParams& params, int j) {
  const double n = params.n();
  const double d = params.d();
  const double N = static_cast<double>(params.N());
  return 0.5 * n * std::log(d) + 0.5 * j * (std::log(d - 1.0) - std::log(d)) +
         (n + 2.0 - j) * std::log(2.0) + 0.5 * N * std::log(kPi) +
         std::lgamma(0.5 * n + 1.0) - std::lgamma(0.5 * j + 1.0) -
         std::lgamma(n + 1.0 - j) - std::lgamma(0.5 * (N + j - n));
}

// Same coefficient divided by Vol(S^N); this is the weight of J_{N,N-n+j}
// in the probability formula and stays well scaled when K itself does not.
double log_abs_probability_coefficient(const SpaceParams& params, int j) {
  return log_abs_curvature_coefficient(params, j) - log_sphere_volume(params.N());
}

double coefficient_sign(int j) { return (j / 2) % 2 == 0 ? 1.0 : -1.0; }

// Sum over even j of sign_j * exp(log_coeff(j)) * J_{N,N-n+j}(eps).
double weighted_j_sum(const SpaceParams& params, double eps,
                      double (*log_coeff)(const SpaceParams&, int)) {
  double acc = 0.0;
  for (int j = 0; j <= params.n(); j += 2) {
    const double jj = j_integral(params.N(), params.N() - params.n() + j, eps);
    if (jj <= 0.0) continue;
    acc += coefficient_sign(j) * std::exp(log_coeff(params, j) + std::log(jj));
  }
  return acc;
}

}  // namespace

ReachResult reach(const SpaceParams& params) {
  ReachResult r;
  r.rho1 = std::sqrt(0.5 * (1.0 + 1.0 / (params.d() - 1.0)));
  r.rho2 = 0.25 * kPi;
  r.rho = std::min(r.rho1, r.rho2);
  return r;
}

double veronese_volume(const SpaceParams& params) {
  return std::pow(static_cast<double>(params.d()), 0.5 * params.n()) *
         sphere_volume(params.n());
}

double log_sphere_volume(Eigen::Index m) {
  return std::log(2.0) + 0.5 * (m + 1) * std::log(kPi) - std::lgamma(0.5 * (m + 1));
}

double sphere_volume(Eigen::Index m) { return std::exp(log_sphere_volume(m)); }

double j_integral(Eigen::Index N, Eigen::Index k, double eps) {
  if (k < 1 || k > N) throw std::invalid_argument("j_integral: need 1 <= k <= N");
  if (eps < 0.0 || eps > 0.5 * kPi)
    throw std::domain_error("j_integral: need 0 <= eps <= pi/2");
  if (eps == 0.0) return 0.0;

  const double half_exp = 0.5 * (N + 1);
  const double t_max = std::tan(eps);
  if (std::isfinite(t_max) && t_max <= kMaxTan) {
    auto f = [k, half_exp](double t) {
      return std::pow(t, static_cast<double>(k - 1)) /
             std::pow(1.0 + t * t, half_exp);
    };
    return quad::integrate(f, 0.0, t_max);
  }
  auto f = [k, N](double rho) {
    return std::pow(std::sin(rho), static_cast<double>(k - 1)) *
           std::pow(std::cos(rho), static_cast<double>(N - k));
  };
  return quad::integrate(f, 0.0, eps);
}

double j_integral_euclidean(Eigen::Index k, double eps) {
  if (k < 1) throw std::invalid_argument("j_integral_euclidean: need k >= 1");
  if (eps < 0.0) throw std::domain_error("j_integral_euclidean: need eps >= 0");
  return std::pow(eps, static_cast<double>(k));
}

double curvature_coefficient(const SpaceParams& params, int j) {
  if (j < 0 || j > params.n() || j % 2 != 0) return 0.0;
  return coefficient_sign(j) * std::exp(log_abs_curvature_coefficient(params, j));
}

CurvatureTable curvature_table(const SpaceParams& params) {
  CurvatureTable table;
  table.n = params.n();
  table.d = params.d();
  table.N = params.N();
  for (int j = 0; j <= params.n(); j += 2)
    table.k_by_j[j] = curvature_coefficient(params, j);
  return table;
}

RangedValue tube_volume(const SpaceParams& params, double eps) {
  if (eps < 0.0) throw std::domain_error("tube_volume: need eps >= 0");
  if (eps > 0.5 * kPi)
    throw std::domain_error("tube_volume: need eps <= pi/2");
  RangedValue out;
  out.value = weighted_j_sum(params, eps, &log_abs_curvature_coefficient);
  out.valid_range = eps < reach(params).rho;
  return out;
}

RangedValue prob_close_rank_one(const SpaceParams& params, double delta) {
  if (delta < 0.0 || delta > 1.0)
    throw std::domain_error("prob_close_rank_one: need 0 <= delta <= 1");
  RangedValue out;
  const double eps = std::asin(delta);
  out.value = weighted_j_sum(params, eps, &log_abs_probability_coefficient);
  out.valid_range = eps < reach(params).rho;
  return out;
}

RangedValue prob_rational_curve(int d, double delta) {
  if (d < 2) throw std::invalid_argument("prob_rational_curve: need d >= 2");
  if (delta < 0.0) throw std::domain_error("prob_rational_curve: need delta >= 0");
  RangedValue out;
  out.value = std::sqrt(static_cast<double>(d)) *
              std::pow(delta, static_cast<double>(d - 1));
  out.valid_range =
      delta <= 1.0 && std::asin(delta) <= reach(SpaceParams(1, d)).rho;
  return out;
}

double prob_sym3_matrices(double delta) {
  if (delta < 0.0 || delta > 1.0 / std::sqrt(2.0))
    throw std::domain_error("prob_sym3_matrices: need 0 <= delta <= 1/sqrt(2)");
  const double c = std::sqrt(1.0 - delta * delta);
  return (2.0 * delta * c * (14.0 * delta * delta - 3.0) +
          6.0 * std::atan(delta / c)) /
         (3.0 * kPi);
}

double DetExpansionPoly::operator()(double lambda) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

DetExpansionPoly goe_det_expectation(int n) {
  if (n < 1) throw std::invalid_argument("goe_det_expectation: need n >= 1");
  DetExpansionPoly poly;
  poly.n = n;
  poly.coeffs.assign(static_cast<std::size_t>(n) + 1, 0.0);
  // (2k)!/(2^{2k} k!) = (2k-1)!! / 2^k, built incrementally
  double dfact = 1.0;
  for (int k = 0; 2 * k <= n; ++k) {
    if (k > 0) dfact *= (2.0 * k - 1.0) / 2.0;
    poly.coeffs[2 * k] = (k % 2 == 0 ? 1.0 : -1.0) * dfact * binomial(n, 2 * k);
  }
  return poly;
}

double expected_gj(int n, int j) {
  if (n < 1) throw std::invalid_argument("expected_gj: need n >= 1");
  if (j < 0 || j > n) throw std::invalid_argument("expected_gj: need 0 <= j <= n");
  if (j % 2 != 0) return 0.0;
  const int k = j / 2;
  double fact_ratio = 1.0;  // j! / (j/2)!
  for (int i = k + 1; i <= j; ++i) fact_ratio *= i;
  return (k % 2 == 0 ? 1.0 : -1.0) * fact_ratio * binomial(n, j) /
         std::pow(2.0, j);
}

double unique_approx_lower_bound(const SpaceParams& params) {
  return weighted_j_sum(params, reach(params).rho,
                        &log_abs_probability_coefficient);
}

}  // namespace veronese
