#pragma once

#include <json.hpp>

#include "veronese/mc_harness.hpp"
#include "veronese/rank_one_solver.hpp"
#include "veronese/tensor_space.hpp"
#include "veronese/tube_formula.hpp"
#include "veronese/veronese_geometry.hpp"

namespace veronese {

/// {"n": int, "d": int, "coeffs": [float, ...]} with coefficients in the
/// canonical multi-index order.
nlohmann::json bw_to_json(const BWPolynomial& p);

/// Parses the schema above; rejects coefficient sequences whose length is not
/// C(n+d, d).
BWPolynomial bw_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const SeedSpec& s);
void to_json(nlohmann::json& j, const ReachResult& r);
void to_json(nlohmann::json& j, const CurvatureTable& t);
void to_json(nlohmann::json& j, const DetExpansionPoly& p);
void to_json(nlohmann::json& j, const RankOneResult& r);
void to_json(nlohmann::json& j, const McReport& r);
void to_json(nlohmann::json& j, const WeingartenStats& s);
void to_json(nlohmann::json& j, const FiniteDiffReport& r);
void to_json(nlohmann::json& j, const NormalSplit& s);

}  // namespace veronese
