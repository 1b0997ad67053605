#include "veronese/tensor_space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace veronese {

namespace {

long long binomial_ll(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long r = 1;
  for (int i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
  }
  return r;
}

// Monomial value x^alpha, one entry of alpha reduced by `drop_k` times
// (drop_k in {0,1,2} is enough for value/gradient/Hessian loops).
double monomial(const Eigen::VectorXd& x, const MultiIndex& alpha, int k = -1,
                int drop_k = 0, int l = -1, int drop_l = 0) {
  double m = 1.0;
  for (int v = 0; v < static_cast<int>(alpha.size()); ++v) {
    int e = alpha[v];
    if (v == k) e -= drop_k;
    if (v == l) e -= drop_l;
    const double xv = x[v];
    for (int t = 0; t < e; ++t) m *= xv;
  }
  return m;
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int n, int d) {
  std::vector<MultiIndex> out;
  MultiIndex alpha(static_cast<std::size_t>(n) + 1, 0);
  alpha[0] = d;
  while (true) {
    out.push_back(alpha);
    // next composition in descending lexicographic order
    int k = n - 1;
    while (k >= 0 && alpha[k] == 0) --k;
    if (k < 0) break;
    --alpha[k];
    int tail = 1;
    for (int v = k + 1; v <= n; ++v) {
      tail += alpha[v];
      alpha[v] = 0;
    }
    alpha[k + 1] = tail;
  }
  return out;
}

SpaceParams::SpaceParams(int n, int d) : n_(n), d_(d) {
  if (n < 1) throw std::invalid_argument("SpaceParams: need n >= 1");
  if (d < 2) throw std::invalid_argument("SpaceParams: need d >= 2");

  auto tables = std::make_shared<Tables>();
  tables->indices = enumerate_multi_indices(n, d);
  N_ = static_cast<Eigen::Index>(tables->indices.size()) - 1;
  if (N_ + 1 != static_cast<Eigen::Index>(binomial_ll(n + d, d)))
    throw std::logic_error("SpaceParams: enumeration size mismatch");

  const double log_d_fact = std::lgamma(d + 1.0);
  tables->sqrt_mult.reserve(tables->indices.size());
  for (Eigen::Index i = 0; i <= N_; ++i) {
    const MultiIndex& alpha = tables->indices[i];
    double log_mult = log_d_fact;
    for (int e : alpha) log_mult -= std::lgamma(e + 1.0);
    tables->sqrt_mult.push_back(std::exp(0.5 * log_mult));
    tables->rank.emplace(alpha, i);
  }
  tables_ = std::move(tables);
}

Eigen::Index SpaceParams::index_of(const MultiIndex& alpha) const {
  auto it = tables_->rank.find(alpha);
  if (it == tables_->rank.end())
    throw std::invalid_argument("SpaceParams::index_of: multi-index not in space");
  return it->second;
}

BWPolynomial::BWPolynomial(SpaceParams params, Eigen::VectorXd coeffs)
    : params_(std::move(params)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != params_.dim())
    throw std::invalid_argument("BWPolynomial: expected " +
                                std::to_string(params_.dim()) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
}

double bw_inner(const BWPolynomial& p, const BWPolynomial& q) {
  if (p.params() != q.params())
    throw std::invalid_argument("bw_inner: mismatched spaces");
  return p.coeffs().dot(q.coeffs());
}

double evaluate(const BWPolynomial& p, const Eigen::VectorXd& x) {
  const SpaceParams& sp = p.params();
  if (x.size() != sp.n() + 1)
    throw std::invalid_argument("evaluate: point has wrong dimension");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sp.dim(); ++i) {
    const double c = p.coeffs()[i];
    if (c == 0.0) continue;
    acc += c * sp.sqrt_multinomial(i) * monomial(x, sp.multi_index(i));
  }
  return acc;
}

Eigen::VectorXd evaluate_gradient(const BWPolynomial& p, const Eigen::VectorXd& x) {
  const SpaceParams& sp = p.params();
  if (x.size() != sp.n() + 1)
    throw std::invalid_argument("evaluate_gradient: point has wrong dimension");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(sp.n() + 1);
  for (Eigen::Index i = 0; i < sp.dim(); ++i) {
    const double c = p.coeffs()[i];
    if (c == 0.0) continue;
    const MultiIndex& alpha = sp.multi_index(i);
    const double w = c * sp.sqrt_multinomial(i);
    for (int k = 0; k <= sp.n(); ++k) {
      if (alpha[k] == 0) continue;
      g[k] += w * alpha[k] * monomial(x, alpha, k, 1);
    }
  }
  return g;
}

Eigen::MatrixXd evaluate_hessian(const BWPolynomial& p, const Eigen::VectorXd& x) {
  const SpaceParams& sp = p.params();
  if (x.size() != sp.n() + 1)
    throw std::invalid_argument("evaluate_hessian: point has wrong dimension");
  const int m = sp.n() + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < sp.dim(); ++i) {
    const double c = p.coeffs()[i];
    if (c == 0.0) continue;
    const MultiIndex& alpha = sp.multi_index(i);
    const double w = c * sp.sqrt_multinomial(i);
    for (int k = 0; k < m; ++k) {
      if (alpha[k] == 0) continue;
      // diagonal entry
      if (alpha[k] >= 2)
        h(k, k) += w * alpha[k] * (alpha[k] - 1) * monomial(x, alpha, k, 2);
      for (int l = k + 1; l < m; ++l) {
        if (alpha[l] == 0) continue;
        const double v = w * alpha[k] * alpha[l] * monomial(x, alpha, k, 1, l, 1);
        h(k, l) += v;
        h(l, k) += v;
      }
    }
  }
  return h;
}

BWPolynomial veronese_point(const SpaceParams& params, const Eigen::VectorXd& a) {
  if (a.size() != params.n() + 1)
    throw std::invalid_argument("veronese_point: point has wrong dimension");
  const double nrm = a.norm();
  if (std::abs(nrm - 1.0) > 1e-12)
    throw std::invalid_argument("veronese_point: input is not a unit vector");
  const Eigen::VectorXd u = a / nrm;
  Eigen::VectorXd c(params.dim());
  for (Eigen::Index i = 0; i < params.dim(); ++i)
    c[i] = params.sqrt_multinomial(i) * monomial(u, params.multi_index(i));
  return BWPolynomial(params, std::move(c));
}

BWPolynomial sym_matrix_to_poly(const Eigen::MatrixXd& Q) {
  if (Q.rows() != Q.cols() || Q.rows() < 2)
    throw std::invalid_argument("sym_matrix_to_poly: need a square matrix of size >= 2");
  const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("sym_matrix_to_poly: matrix is not symmetric");

  const int m = static_cast<int>(Q.rows());
  SpaceParams params(m - 1, 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(params.dim());
  MultiIndex alpha(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    alpha[i] = 2;
    c[params.index_of(alpha)] = Q(i, i);
    alpha[i] = 0;
    for (int j = i + 1; j < m; ++j) {
      alpha[i] = 1;
      alpha[j] = 1;
      // x_i x_j has BW basis weight sqrt(2), so x^T Q x picks up 2 Q_ij / sqrt(2)
      c[params.index_of(alpha)] = std::sqrt(2.0) * Q(i, j);
      alpha[i] = 0;
      alpha[j] = 0;
    }
  }
  return BWPolynomial(std::move(params), std::move(c));
}

Eigen::MatrixXd poly_to_sym_matrix(const BWPolynomial& p) {
  const SpaceParams& sp = p.params();
  if (sp.d() != 2)
    throw std::invalid_argument("poly_to_sym_matrix: defined for d = 2 only");
  const int m = sp.n() + 1;
  Eigen::MatrixXd Q(m, m);
  MultiIndex alpha(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    alpha[i] = 2;
    Q(i, i) = p.coeffs()[sp.index_of(alpha)];
    alpha[i] = 0;
    for (int j = i + 1; j < m; ++j) {
      alpha[i] = 1;
      alpha[j] = 1;
      const double v = p.coeffs()[sp.index_of(alpha)] / std::sqrt(2.0);
      Q(i, j) = v;
      Q(j, i) = v;
      alpha[i] = 0;
      alpha[j] = 0;
    }
  }
  return Q;
}

}  // namespace veronese
