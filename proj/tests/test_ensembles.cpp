#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "veronese/ensembles.hpp"
#include "veronese/veronese_geometry.hpp"

using namespace veronese;

TEST_CASE("fixed seeds reproduce samples exactly") {
  SpaceParams params(2, 3);
  const SeedSpec seed{123456789ULL, 42};

  const BWPolynomial p1 = sample_kostlan(params, seed);
  const BWPolynomial p2 = sample_kostlan(params, seed);
  CHECK((p1.coeffs() - p2.coeffs()).norm() == 0.0);

  const GoeSample g1 = sample_goe(4, seed);
  const GoeSample g2 = sample_goe(4, seed);
  CHECK((g1.entries - g2.entries).norm() == 0.0);
  CHECK((g1.entries - g1.entries.transpose()).norm() == 0.0);

  const BWPolynomial w1 = sample_normal_w(params, seed);
  const BWPolynomial w2 = sample_normal_w(params, seed);
  CHECK((w1.coeffs() - w2.coeffs()).norm() == 0.0);

  // distinct streams decorrelate
  const BWPolynomial p3 = sample_kostlan(params, SeedSpec{123456789ULL, 43});
  CHECK((p1.coeffs() - p3.coeffs()).norm() > 1e-8);
}

TEST_CASE("kostlan coordinates are standard gaussians") {
  SpaceParams params(1, 3);
  const int n_samples = 100000;
  const Eigen::Index dim = params.dim();

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  double norm2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const BWPolynomial p = sample_kostlan(params, SeedSpec{5150, static_cast<std::uint64_t>(i)});
    mean += p.coeffs();
    norm2 += p.squared_norm();
  }
  mean /= n_samples;
  norm2 /= n_samples;

  for (Eigen::Index k = 0; k < dim; ++k) CHECK(std::abs(mean[k]) <= 0.01);
  CHECK(norm2 == doctest::Approx(static_cast<double>(dim)).epsilon(0.01));
}

TEST_CASE("GOE moments: Var diag 1, Var offdiag 1/2, E tr Q^2 = 6 for n = 3") {
  const int n_samples = 100000;
  double m11 = 0.0, s11 = 0.0;
  double m12 = 0.0, s12 = 0.0;
  double tr2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const GoeSample g = sample_goe(3, SeedSpec{777, static_cast<std::uint64_t>(i)});
    m11 += g.entries(0, 0);
    s11 += g.entries(0, 0) * g.entries(0, 0);
    m12 += g.entries(0, 1);
    s12 += g.entries(0, 1) * g.entries(0, 1);
    tr2 += (g.entries * g.entries).trace();
  }
  m11 /= n_samples;
  s11 /= n_samples;
  m12 /= n_samples;
  s12 /= n_samples;
  tr2 /= n_samples;

  CHECK(std::abs(s11 - m11 * m11 - 1.0) <= 0.02);
  CHECK(std::abs(s12 - m12 * m12 - 0.5) <= 0.01);
  CHECK(std::abs(tr2 - 6.0) <= 0.1);
}

TEST_CASE("normal-space samples are supported exactly on W") {
  for (auto [n, d] : {std::pair{2, 3}, {3, 5}, {2, 2}}) {
    SpaceParams params(n, d);
    const NormalSplit split = normal_split(params);
    const BWPolynomial eta = sample_normal_w(params, SeedSpec{31337, 0});

    int support = 0;
    for (Eigen::Index i = 0; i < params.dim(); ++i)
      if (eta.coeffs()[i] != 0.0) ++support;
    CHECK(support == n * (n + 1) / 2);
    CHECK(static_cast<int>(split.w_idx.size()) == n * (n + 1) / 2);

    for (Eigen::Index i : split.w_idx) CHECK(eta.coeffs()[i] != 0.0);
    for (Eigen::Index i : split.p_idx) CHECK(eta.coeffs()[i] == 0.0);
    for (Eigen::Index i : split.tangent_idx) CHECK(eta.coeffs()[i] == 0.0);
    CHECK(eta.coeffs()[split.base_index] == 0.0);
  }

  // d = 2: W is the whole normal space
  SpaceParams quad(3, 2);
  CHECK(normal_split(quad).p_idx.empty());
}

TEST_CASE("GOE pushed through the quadratic-form isometry matches Kostlan d=2") {
  SpaceParams params(2, 2);
  const int n_samples = 100000;
  const Eigen::Index dim = params.dim();

  Eigen::VectorXd mean_goe = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd second_goe = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd mean_k = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd second_k = Eigen::VectorXd::Zero(dim);

  for (int i = 0; i < n_samples; ++i) {
    const auto u = static_cast<std::uint64_t>(i);
    const BWPolynomial via_goe = sym_matrix_to_poly(sample_goe(3, SeedSpec{900, u}).entries);
    const BWPolynomial direct = sample_kostlan(params, SeedSpec{901, u});
    mean_goe += via_goe.coeffs();
    second_goe += via_goe.coeffs().cwiseProduct(via_goe.coeffs());
    mean_k += direct.coeffs();
    second_k += direct.coeffs().cwiseProduct(direct.coeffs());
  }
  mean_goe /= n_samples;
  second_goe /= n_samples;
  mean_k /= n_samples;
  second_k /= n_samples;

  // both ensembles: coordinate means 0 and variances 1, each within 3 sigma
  const double se_mean = 1.0 / std::sqrt(n_samples);
  const double se_var = std::sqrt(2.0 / n_samples);
  for (Eigen::Index k = 0; k < dim; ++k) {
    CHECK(std::abs(mean_goe[k]) <= 3.0 * se_mean);
    CHECK(std::abs(mean_k[k]) <= 3.0 * se_mean);
    CHECK(std::abs(second_goe[k] - mean_goe[k] * mean_goe[k] - 1.0) <= 3.0 * se_var);
    CHECK(std::abs(second_k[k] - mean_k[k] * mean_k[k] - 1.0) <= 3.0 * se_var);
  }
}
