#include "veronese/io.hpp"

#include <stdexcept>
#include <vector>

namespace veronese {

nlohmann::json bw_to_json(const BWPolynomial& p) {
  std::vector<double> coeffs(p.coeffs().data(), p.coeffs().data() + p.coeffs().size());
  return nlohmann::json{{"n", p.params().n()}, {"d", p.params().d()}, {"coeffs", coeffs}};
}

BWPolynomial bw_from_json(const nlohmann::json& j) {
  if (!j.contains("n") || !j.contains("d") || !j.contains("coeffs"))
    throw std::invalid_argument("polynomial JSON needs fields n, d, coeffs");
  SpaceParams params(j.at("n").get<int>(), j.at("d").get<int>());
  const auto coeffs = j.at("coeffs").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(coeffs.size()) != params.dim())
    throw std::invalid_argument("polynomial JSON: coeffs length must be C(n+d, d)");
  Eigen::VectorXd c(params.dim());
  for (Eigen::Index i = 0; i < params.dim(); ++i) c[i] = coeffs[i];
  return BWPolynomial(std::move(params), std::move(c));
}

void to_json(nlohmann::json& j, const SeedSpec& s) {
  j = nlohmann::json{{"master_seed", s.master_seed}, {"stream_index", s.stream_index}};
}

void to_json(nlohmann::json& j, const ReachResult& r) {
  j = nlohmann::json{{"rho1", r.rho1}, {"rho2", r.rho2}, {"rho", r.rho}};
}

void to_json(nlohmann::json& j, const CurvatureTable& t) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [jj, k] : t.k_by_j) coeffs[std::to_string(t.N - t.n + jj)] = k;
  j = nlohmann::json{{"n", t.n}, {"d", t.d}, {"N", t.N}, {"coefficients", coeffs}};
}

void to_json(nlohmann::json& j, const DetExpansionPoly& p) {
  j = nlohmann::json{{"n", p.n}, {"coeffs", p.coeffs}};
}

void to_json(nlohmann::json& j, const RankOneResult& r) {
  std::vector<double> x(r.x_star.data(), r.x_star.data() + r.x_star.size());
  j = nlohmann::json{{"x_star", x},
                     {"value", r.value},
                     {"abs_value", r.abs_value},
                     {"distance", r.distance},
                     {"converged", r.converged},
                     {"restarts_used", r.restarts_used}};
}

void to_json(nlohmann::json& j, const McReport& r) {
  j = nlohmann::json{{"estimate", r.estimate},
                     {"std_error", r.std_error},
                     {"ci_low", r.ci_low},
                     {"ci_high", r.ci_high},
                     {"ci_z", r.ci_z},
                     {"n_samples", r.n_samples},
                     {"seed", r.seed},
                     {"stream_layout", "per-sample stream index = sample ordinal"},
                     {"reference", r.reference},
                     {"z_score", r.z_score},
                     {"heuristic_oracle", r.heuristic_oracle},
                     {"non_converged", r.non_converged}};
}

void to_json(nlohmann::json& j, const WeingartenStats& s) {
  std::vector<std::vector<double>> var(s.variance.rows());
  for (Eigen::Index i = 0; i < s.variance.rows(); ++i) {
    var[i].resize(s.variance.cols());
    for (Eigen::Index k = 0; k < s.variance.cols(); ++k) var[i][k] = s.variance(i, k);
  }
  j = nlohmann::json{{"n_samples", s.n_samples}, {"seed", s.seed},
                     {"variance", var},          {"ref_diag", s.ref_diag},
                     {"ref_offdiag", s.ref_offdiag}, {"max_abs_z", s.max_abs_z}};
}

void to_json(nlohmann::json& j, const FiniteDiffReport& r) {
  j = nlohmann::json{{"reference", r.reference},
                     {"max_rel_error", r.max_rel_error},
                     {"convergence_ratio", r.convergence_ratio},
                     {"trials", r.trials}};
}

void to_json(nlohmann::json& j, const NormalSplit& s) {
  j = nlohmann::json{{"base_index", s.base_index},
                     {"tangent_dim", s.tangent_idx.size()},
                     {"w_dim", s.w_idx.size()},
                     {"p_dim", s.p_idx.size()}};
}

}  // namespace veronese
