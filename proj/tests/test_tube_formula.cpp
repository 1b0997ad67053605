#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "veronese/quadrature.hpp"
#include "veronese/tube_formula.hpp"

using namespace veronese;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("reach: pi/4 up to d = 5, focal radius from d = 6 on") {
  CHECK(std::abs(reach(SpaceParams(1, 2)).rho - 0.25 * kPi) <= 1e-15);
  CHECK(std::abs(reach(SpaceParams(3, 4)).rho - 0.25 * kPi) <= 1e-15);

  const ReachResult r5 = reach(SpaceParams(2, 5));
  CHECK(r5.rho1 == doctest::Approx(std::sqrt(0.625)).epsilon(1e-15));
  CHECK(r5.rho1 > 0.25 * kPi);
  CHECK(std::abs(r5.rho - 0.25 * kPi) <= 1e-15);

  const ReachResult r6 = reach(SpaceParams(1, 6));
  CHECK(r6.rho1 == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(r6.rho1 < 0.25 * kPi);
  CHECK(r6.rho == r6.rho1);

  for (int d = 2; d <= 12; ++d) {
    const ReachResult r = reach(SpaceParams(2, d));
    CHECK(r.rho2 == 0.25 * kPi);
    CHECK(r.rho1 > 1.0 / std::sqrt(2.0));
    const double expected =
        d <= 5 ? 0.25 * kPi : std::sqrt(0.5 * (1.0 + 1.0 / (d - 1.0)));
    CHECK(std::abs(r.rho - expected) <= 1e-15);
  }
}

TEST_CASE("veronese volume") {
  CHECK(veronese_volume(SpaceParams(1, 3)) ==
        doctest::Approx(2.0 * std::sqrt(3.0) * kPi).epsilon(1e-14));
  CHECK(veronese_volume(SpaceParams(2, 2)) == doctest::Approx(8.0 * kPi).epsilon(1e-14));
  CHECK_THROWS_AS(SpaceParams(1, 1), std::invalid_argument);  // d = 1 rejected upstream
}

TEST_CASE("J integral: analytic values, monotonicity, both forms") {
  CHECK(j_integral(7, 3, 0.0) == 0.0);
  CHECK(j_integral(3, 2, kPi / 6.0) == doctest::Approx(0.125).epsilon(1e-12));

  // closed form for the rational-curve block: J_{d,d-1}(eps) = sin^{d-1}(eps)/(d-1)
  for (int d : {3, 5, 8}) {
    for (double eps : {0.1, 0.4, 0.7}) {
      const double expected = std::pow(std::sin(eps), d - 1) / (d - 1);
      CHECK(j_integral(d, d - 1, eps) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  // increasing in eps
  double prev = 0.0;
  for (double eps = 0.1; eps < 1.5; eps += 0.2) {
    const double v = j_integral(9, 5, eps);
    CHECK(v > prev);
    prev = v;
  }

  // t-form against the sin/cos form evaluated by direct quadrature
  for (auto [N, k] : {std::pair<Eigen::Index, Eigen::Index>{5, 3}, {9, 7}, {12, 4}}) {
    for (double eps : {0.3, 0.7, 1.2}) {
      const double direct = quad::integrate(
          [N = N, k = k](double rho) {
            return std::pow(std::sin(rho), static_cast<double>(k - 1)) *
                   std::pow(std::cos(rho), static_cast<double>(N - k));
          },
          0.0, eps);
      CHECK(j_integral(N, k, eps) == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  // near pi/2 the sin/cos form takes over and stays finite
  CHECK(std::isfinite(j_integral(6, 3, 0.5 * kPi)));
  CHECK(j_integral(6, 3, 0.5 * kPi) > j_integral(6, 3, 1.5));

  CHECK_THROWS_AS(j_integral(5, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(j_integral(5, 6, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(j_integral(5, 2, -0.1), std::domain_error);
  CHECK_THROWS_AS(j_integral(5, 2, 2.0), std::domain_error);

  CHECK(j_integral_euclidean(3, 0.5) == doctest::Approx(0.125));
}

TEST_CASE("curvature coefficients: values, vanishing, signs") {
  // K_{N-n}(V_{1,3}) = Vol(V_{1,3}) * Vol(S^1) = 4 sqrt(3) pi^2
  CHECK(curvature_coefficient(SpaceParams(1, 3), 0) ==
        doctest::Approx(68.37862509316867).epsilon(1e-12));

  for (auto [n, d] : {std::pair{2, 3}, {3, 2}, {3, 4}}) {
    SpaceParams params(n, d);
    for (int j = 1; j <= n; j += 2) CHECK(curvature_coefficient(params, j) == 0.0);
    CHECK(curvature_coefficient(params, -2) == 0.0);
    CHECK(curvature_coefficient(params, n + 2 - (n % 2)) == 0.0);
    for (int j = 0; j <= n; j += 2) {
      const double k = curvature_coefficient(params, j);
      CHECK(((j / 2) % 2 == 0 ? k > 0.0 : k < 0.0));
    }
  }

  // sign of the first negative coefficient, explicitly
  CHECK(curvature_coefficient(SpaceParams(2, 2), 2) < 0.0);

  // identity: K_{N-n} = Vol(V_{n,d}) * Vol(S^{N-n-1})
  for (auto [n, d] : {std::pair{1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 4}}) {
    SpaceParams params(n, d);
    const double lhs = curvature_coefficient(params, 0);
    const double rhs = veronese_volume(params) * sphere_volume(params.N() - n - 1);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }

  const CurvatureTable table = curvature_table(SpaceParams(3, 4));
  CHECK(table.k_by_j.size() == 2);
  CHECK(table.k_by_j.at(0) == curvature_coefficient(SpaceParams(3, 4), 0));
  CHECK(table.k_by_j.at(2) == curvature_coefficient(SpaceParams(3, 4), 2));
}

TEST_CASE("gamma identities behind the coefficient derivation") {
  // radial gaussian moment: int_0^inf rho^{m-1} e^{-rho^2/2} = 2^{m/2-1} Gamma(m/2)
  // with m = n(n+1)/2 + j
  for (int n = 1; n <= 4; ++n) {
    for (int j : {0, 2, 4}) {
      const double m = n * (n + 1) / 2.0 + j;
      const double lhs = quad::integrate(
          [m](double rho) { return std::pow(rho, m - 1.0) * std::exp(-0.5 * rho * rho); },
          0.0, 50.0);
      const double rhs = std::pow(2.0, 0.25 * (n * n + n) + 0.5 * j - 1.0) *
                         std::tgamma(0.25 * (n * n + n + 2.0 * j));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }

  // disk integral: int_{D^m} (1-|z|^2)^beta dz with m = N - n - n(n+1)/2 and
  // beta = n(n+1)/4 - 1 + j/2 equals
  // pi^{(2N - n^2 - 3n)/4} Gamma((n^2+n+2j)/4) / Gamma((N-n+j)/2)
  for (auto [n, d] : {std::pair{1, 4}, {2, 3}, {3, 3}, {4, 3}}) {
    SpaceParams params(n, d);
    const double N = static_cast<double>(params.N());
    const int m = static_cast<int>(N) - n - n * (n + 1) / 2;
    REQUIRE(m >= 1);
    for (int j : {0, 2, 4}) {
      const double beta = 0.25 * n * (n + 1) - 1.0 + 0.5 * j;
      // radial form, substituting r = sin(phi) to keep the integrand smooth
      const double radial = quad::integrate(
          [m, beta](double phi) {
            return std::pow(std::sin(phi), m - 1.0) *
                   std::pow(std::cos(phi), 2.0 * beta + 1.0);
          },
          0.0, 0.5 * kPi);
      const double lhs = sphere_volume(m - 1) * radial;
      const double rhs = std::pow(kPi, 0.25 * (2.0 * N - n * n - 3.0 * n)) *
                         std::tgamma(0.25 * (n * n + n + 2.0 * j)) /
                         std::tgamma(0.5 * (N - n + j));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("tube volume: base cases and the rational-curve form") {
  SpaceParams params(1, 3);
  CHECK(tube_volume(params, 0.0).value == 0.0);

  // Vol(tube)/Vol(S^3) = sqrt(3) sin^2(eps) for the twisted cubic
  for (double eps : {0.1, 0.3, 0.6}) {
    const RangedValue v = tube_volume(params, eps);
    CHECK(v.valid_range == (eps < reach(params).rho));
    CHECK(v.value / sphere_volume(3) ==
          doctest::Approx(std::sqrt(3.0) * std::sin(eps) * std::sin(eps)).epsilon(1e-12));
  }

  double prev = -1.0;
  for (double eps = 0.05; eps < reach(params).rho; eps += 0.1) {
    const double v = tube_volume(params, eps).value;
    CHECK(v > prev);
    prev = v;
  }

  CHECK_FALSE(tube_volume(params, 1.2).valid_range);
  CHECK_THROWS_AS(tube_volume(params, -0.1), std::domain_error);
  CHECK_THROWS_AS(tube_volume(params, 2.0), std::domain_error);
}

TEST_CASE("closed-form probability: examples and identities") {
  CHECK(prob_close_rank_one(SpaceParams(2, 3), 0.0).value == 0.0);

  const RangedValue twisted = prob_close_rank_one(SpaceParams(1, 3), 0.3);
  CHECK(twisted.valid_range);
  CHECK(twisted.value == doctest::Approx(0.15588457268119893).epsilon(1e-12));

  const RangedValue sym3 = prob_close_rank_one(SpaceParams(2, 2), 0.2);
  CHECK(sym3.value == doctest::Approx(0.02672389).epsilon(1e-6));
  CHECK(sym3.value == doctest::Approx(prob_sym3_matrices(0.2)).epsilon(1e-10));

  CHECK_THROWS_AS(prob_close_rank_one(SpaceParams(1, 3), -0.1), std::domain_error);
  CHECK_THROWS_AS(prob_close_rank_one(SpaceParams(1, 3), 1.5), std::domain_error);

  // probability * Vol(S^N) = tube volume at eps = arcsin(delta)
  for (auto [n, d] : {std::pair{1, 3}, {2, 2}, {2, 4}, {3, 3}}) {
    SpaceParams params(n, d);
    for (double delta : {0.1, 0.3, 0.5}) {
      const double eps = std::asin(delta);
      if (eps >= reach(params).rho) continue;
      const double lhs = prob_close_rank_one(params, delta).value * sphere_volume(params.N());
      const double rhs = tube_volume(params, eps).value;
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  // beyond the reach the value is still reported, flagged invalid
  const RangedValue beyond = prob_close_rank_one(SpaceParams(1, 2), 0.9);
  CHECK_FALSE(beyond.valid_range);
  CHECK(std::isfinite(beyond.value));
}

TEST_CASE("rational normal curves") {
  CHECK(prob_rational_curve(3, 0.1).value == doctest::Approx(0.017320508075688773).epsilon(1e-14));
  CHECK(prob_rational_curve(2, 0.5).value == doctest::Approx(0.7071067811865476).epsilon(1e-14));
  CHECK(prob_rational_curve(4, 0.0).value == 0.0);
  CHECK(prob_rational_curve(4, 0.0).valid_range);
  CHECK_FALSE(prob_rational_curve(2, 0.9).valid_range);
  CHECK_THROWS_AS(prob_rational_curve(1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(prob_rational_curve(3, -0.1), std::domain_error);

  // the general theorem collapses to sqrt(d) delta^{d-1} for n = 1
  for (int d = 2; d <= 8; ++d) {
    SpaceParams params(1, d);
    const double dmax = std::sin(reach(params).rho);
    for (int k = 1; k <= 10; ++k) {
      const double delta = dmax * k / 11.0;
      CHECK(prob_close_rank_one(params, delta).value ==
            doctest::Approx(prob_rational_curve(d, delta).value).epsilon(1e-12));
    }
  }
}

TEST_CASE("3x3 symmetric matrix closed form") {
  CHECK(prob_sym3_matrices(0.0) == 0.0);
  CHECK_THROWS_AS(prob_sym3_matrices(0.8), std::domain_error);
  CHECK_THROWS_AS(prob_sym3_matrices(-0.1), std::domain_error);

  // leading behaviour 32 delta^3 / (3 pi): the residual is O(delta^5)
  for (double delta : {0.02, 0.01, 0.005}) {
    const double leading = 32.0 * std::pow(delta, 3) / (3.0 * kPi);
    const double residual = std::abs(prob_sym3_matrices(delta) - leading);
    CHECK(residual <= 3.0 * 64.0 * std::pow(delta, 5) / (15.0 * kPi));
  }

  // agreement with the general theorem on a grid
  SpaceParams params(2, 2);
  for (double delta = 0.05; delta < 0.70; delta += 0.05) {
    CHECK(prob_close_rank_one(params, delta).value ==
          doctest::Approx(prob_sym3_matrices(delta)).epsilon(1e-10));
  }
}

TEST_CASE("GOE determinant expectation polynomial") {
  const DetExpansionPoly p2 = goe_det_expectation(2);
  REQUIRE(p2.coeffs.size() == 3);
  CHECK(p2.coeffs[0] == 1.0);
  CHECK(p2.coeffs[1] == 0.0);
  CHECK(p2.coeffs[2] == -0.5);

  const DetExpansionPoly p3 = goe_det_expectation(3);
  CHECK(p3.coeffs[2] == -1.5);
  CHECK(p3.coeffs[3] == 0.0);
  CHECK(p3(0.5) == doctest::Approx(0.625));

  const DetExpansionPoly p4 = goe_det_expectation(4);
  CHECK(p4.coeffs[2] == -3.0);
  CHECK(p4.coeffs[4] == 0.75);
  CHECK(p4(0.7) == doctest::Approx(1.0 - 3.0 * 0.49 + 0.75 * 0.2401).epsilon(1e-15));

  // det(I - lambda Q) = sum (-1)^j lambda^j g_j termwise
  for (int n : {1, 2, 3, 5, 8}) {
    const DetExpansionPoly poly = goe_det_expectation(n);
    for (int j = 0; j <= n; ++j) {
      const double expected = (j % 2 == 0 ? 1.0 : -1.0) * expected_gj(n, j);
      CHECK(poly.coeffs[j] == expected);
    }
  }
}

TEST_CASE("expected g_j") {
  CHECK(expected_gj(5, 0) == 1.0);
  CHECK(expected_gj(3, 2) == -1.5);
  for (int n : {1, 2, 4, 7}) CHECK(expected_gj(n, 1) == 0.0);
  CHECK_THROWS_AS(expected_gj(2, 3), std::invalid_argument);
}

TEST_CASE("lower bound for unique best rank-one approximation") {
  // twisted cubic: sqrt(3) sin^2(pi/4) = sqrt(3)/2
  CHECK(unique_approx_lower_bound(SpaceParams(1, 3)) ==
        doctest::Approx(0.5 * std::sqrt(3.0)).epsilon(1e-12));
  // d = 6: sqrt(6) sin^5(sqrt(0.6))
  CHECK(unique_approx_lower_bound(SpaceParams(1, 6)) ==
        doctest::Approx(0.4100060777557044).epsilon(1e-12));

  for (auto [n, d] : {std::pair{1, 2}, {2, 2}, {2, 3}, {3, 4}, {1, 8}}) {
    const double bound = unique_approx_lower_bound(SpaceParams(n, d));
    CHECK(bound > 0.0);
    CHECK(bound < 1.0);
  }
}
