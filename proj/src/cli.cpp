#include "veronese/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "veronese/io.hpp"
#include "veronese/mc_harness.hpp"
#include "veronese/rank_one_solver.hpp"
#include "veronese/tensor_space.hpp"
#include "veronese/tube_formula.hpp"
#include "veronese/veronese_geometry.hpp"

namespace veronese::cli {

namespace {

using nlohmann::json;

struct CommonOpts {
  int n = 1;
  int d = 2;
  std::uint64_t seed = 0;
  long long samples = 100000;
  int workers = 0;
  int restarts = 0;
  std::string format = "json";
  std::string out;
  bool strict = false;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    out.emplace_back(prefix, buf);
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

// Every run echoes its full resolved configuration next to the result.
void emit(const CommonOpts& opts, const std::string& command, const json& config,
          const json& result) {
  if (opts.format == "csv") {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(result, "", cells);
    std::string header;
    std::string row;
    for (const auto& [key, value] : cells) {
      if (!header.empty()) {
        header += ',';
        row += ',';
      }
      header += key;
      row += value;
    }
    write_text(opts.out, header + "\n" + row + "\n");
    return;
  }
  json envelope{{"command", command},
                {"config", config},
                {"timestamp", utc_timestamp()},
                {"result", result}};
  write_text(opts.out, envelope.dump(2) + "\n");
}

json space_header(const SpaceParams& params) {
  return json{{"n", params.n()}, {"d", params.d()}, {"N", params.N()}};
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_space = true) {
  if (with_space) {
    cmd->add_option("--n", opts.n, "number of variables minus one")->required();
    cmd->add_option("--d", opts.d, "degree of the tensor")->required();
  }
  cmd->add_option("--seed", opts.seed, "master seed")->envname("VTUBE_SEED");
  cmd->add_option("--format", opts.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("VTUBE_FORMAT");
  cmd->add_option("--out", opts.out, "output path (default: stdout)");
  cmd->add_flag("--strict", opts.strict, "exit 3 on solver non-convergence");
}

SolverOptions solver_options(const CommonOpts& opts) {
  SolverOptions sopts;
  sopts.restarts = opts.restarts;
  sopts.seed = SeedSpec{opts.seed, 0};
  return sopts;
}

BWPolynomial read_polynomial(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read input file: " + path);
  json j;
  f >> j;
  return bw_from_json(j);
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"closed-form and Monte-Carlo answers to how likely a random "
               "symmetric tensor is to lie near the rank-one locus"};
  app.require_subcommand(1);

  CommonOpts opts;
  double delta = -1.0;
  double eps = -1.0;
  double lambda = std::nan("");
  int goe_size = 3;
  std::string in_path;
  std::string samples_csv;
  double delta_min = 0.05;
  double delta_max = 0.65;
  int steps = 13;
  std::string deltas_list;
  int curvature_j = -1;
  bool use_mc = false;

  auto* prob = app.add_subcommand("prob", "closed-form probability of being delta-close to rank one");
  add_common(prob, opts);
  prob->add_option("--delta", delta, "relative Frobenius distance")->required();

  auto* reach_cmd = app.add_subcommand("reach", "reach of the spherical Veronese");
  add_common(reach_cmd, opts);

  auto* curvature = app.add_subcommand("curvature", "curvature coefficients");
  add_common(curvature, opts);
  curvature->add_option("--j", curvature_j, "single even offset j (default: whole table)");

  auto* tube = app.add_subcommand("tube-volume", "volume of the spherical tube");
  add_common(tube, opts);
  auto* tube_eps = tube->add_option("--eps", eps, "tube radius (radians)");
  tube->add_option("--delta", delta, "relative distance, converted to eps = arcsin(delta)")
      ->excludes(tube_eps);

  auto* geometry = app.add_subcommand("geometry", "normal splitting and extrinsic invariants");
  add_common(geometry, opts);

  auto* goe_det = app.add_subcommand("goe-det", "expectation polynomial of det(I - lambda Q)");
  goe_det->add_option("--size", goe_size, "matrix size")->required();
  goe_det->add_option("--lambda", lambda, "evaluate the polynomial at lambda");
  add_common(goe_det, opts, /*with_space=*/false);

  auto* approx = app.add_subcommand("approx", "best rank-one approximation of a polynomial file");
  approx->add_option("--in", in_path, "BW polynomial JSON file")->required();
  approx->add_option("--restarts", opts.restarts, "multistart budget (0 = default)")
      ->envname("VTUBE_RESTARTS");
  add_common(approx, opts, /*with_space=*/false);

  auto* entangle = app.add_subcommand("entangle", "geometric measure of entanglement");
  entangle->add_option("--in", in_path, "BW polynomial JSON file")->required();
  entangle->add_option("--restarts", opts.restarts, "multistart budget (0 = default)")
      ->envname("VTUBE_RESTARTS");
  add_common(entangle, opts, /*with_space=*/false);

  auto* mc = app.add_subcommand("mc", "Monte-Carlo verification runs");
  mc->require_subcommand(1);

  auto* mc_prob = mc->add_subcommand("prob", "empirical closeness probability");
  add_common(mc_prob, opts);
  mc_prob->add_option("--delta", delta, "relative Frobenius distance")->required();
  mc_prob->add_option("--samples", opts.samples, "sample count")->envname("VTUBE_SAMPLES");
  mc_prob->add_option("--workers", opts.workers, "worker threads (0 = auto)")->envname("VTUBE_WORKERS");
  mc_prob->add_option("--restarts", opts.restarts, "solver restarts (0 = default)")->envname("VTUBE_RESTARTS");
  mc_prob->add_option("--samples-csv", samples_csv, "write per-sample CSV here");

  auto* mc_goe = mc->add_subcommand("goe-det", "empirical mean of det(I - lambda Q)");
  mc_goe->add_option("--size", goe_size, "matrix size")->required();
  mc_goe->add_option("--lambda", lambda, "determinant shift")->required();
  mc_goe->add_option("--samples", opts.samples, "sample count")->envname("VTUBE_SAMPLES");
  mc_goe->add_option("--workers", opts.workers, "worker threads (0 = auto)")->envname("VTUBE_WORKERS");
  add_common(mc_goe, opts, /*with_space=*/false);

  auto* mc_wein = mc->add_subcommand("weingarten", "entrywise Weingarten variances");
  add_common(mc_wein, opts);
  mc_wein->add_option("--samples", opts.samples, "sample count")->envname("VTUBE_SAMPLES");
  mc_wein->add_option("--workers", opts.workers, "worker threads (0 = auto)")->envname("VTUBE_WORKERS");

  auto* mc_pull = mc->add_subcommand("pullback", "finite-difference metric pullback check");
  add_common(mc_pull, opts);

  auto* mc_curv = mc->add_subcommand("curvature", "finite-difference geodesic curvature check");
  add_common(mc_curv, opts);

  auto* sweep = app.add_subcommand("sweep", "probability table over a delta grid");
  add_common(sweep, opts);
  sweep->add_option("--delta-min", delta_min, "grid start");
  sweep->add_option("--delta-max", delta_max, "grid end");
  sweep->add_option("--steps", steps, "number of grid points");
  sweep->add_option("--deltas", deltas_list, "explicit comma-separated grid (overrides min/max)");
  sweep->add_flag("--mc", use_mc, "attach a Monte-Carlo column");
  sweep->add_option("--samples", opts.samples, "MC sample count")->envname("VTUBE_SAMPLES");
  sweep->add_option("--workers", opts.workers, "worker threads (0 = auto)")->envname("VTUBE_WORKERS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (prob->parsed()) {
      SpaceParams params(opts.n, opts.d);
      const RangedValue v = prob_close_rank_one(params, delta);
      json result = space_header(params);
      result["delta"] = delta;
      result["value"] = v.value;
      result["valid_range"] = v.valid_range;
      result["reach"] = reach(params);
      emit(opts, "prob", json{{"n", opts.n}, {"d", opts.d}, {"delta", delta}}, result);
      return 0;
    }

    if (reach_cmd->parsed()) {
      SpaceParams params(opts.n, opts.d);
      const ReachResult r = reach(params);
      json result = space_header(params);
      result["rho1"] = r.rho1;
      result["rho2"] = r.rho2;
      result["rho"] = r.rho;
      emit(opts, "reach", json{{"n", opts.n}, {"d", opts.d}}, result);
      return 0;
    }

    if (curvature->parsed()) {
      SpaceParams params(opts.n, opts.d);
      json result = space_header(params);
      if (curvature_j >= 0) {
        result["j"] = curvature_j;
        result["value"] = curvature_coefficient(params, curvature_j);
      } else {
        result["table"] = curvature_table(params);
      }
      emit(opts, "curvature", json{{"n", opts.n}, {"d", opts.d}, {"j", curvature_j}}, result);
      return 0;
    }

    if (tube->parsed()) {
      SpaceParams params(opts.n, opts.d);
      if (eps < 0.0 && delta < 0.0)
        throw std::invalid_argument("tube-volume: give --eps or --delta");
      const double radius = eps >= 0.0 ? eps : std::asin(delta);
      const RangedValue v = tube_volume(params, radius);
      json result = space_header(params);
      result["eps"] = radius;
      result["value"] = v.value;
      result["valid_range"] = v.valid_range;
      result["reach"] = reach(params);
      emit(opts, "tube-volume", json{{"n", opts.n}, {"d", opts.d}, {"eps", radius}}, result);
      return 0;
    }

    if (geometry->parsed()) {
      SpaceParams params(opts.n, opts.d);
      json result = space_header(params);
      result["split"] = normal_split(params);
      result["pullback_factor"] = pullback_factor(params);
      result["geodesic_curvature_norm"] = geodesic_curvature_norm(params);
      result["reach"] = reach(params);
      emit(opts, "geometry", json{{"n", opts.n}, {"d", opts.d}}, result);
      return 0;
    }

    if (goe_det->parsed()) {
      const DetExpansionPoly poly = goe_det_expectation(goe_size);
      json result;
      result["poly"] = poly;
      if (!std::isnan(lambda)) {
        result["lambda"] = lambda;
        result["value"] = poly(lambda);
      }
      emit(opts, "goe-det", json{{"size", goe_size}, {"lambda", lambda}}, result);
      return 0;
    }

    if (approx->parsed() || entangle->parsed()) {
      const BWPolynomial p = read_polynomial(in_path);
      const SolverOptions sopts = solver_options(opts);
      const RankOneResult r = best_rank_one(p, sopts);
      json result;
      if (approx->parsed()) {
        result = r;
        emit(opts, "approx", json{{"in", in_path}, {"restarts", opts.restarts}, {"seed", opts.seed}}, result);
      } else {
        const double unit_distance = r.distance / p.norm();
        result["E_G"] = 1.0 - std::sqrt(std::max(0.0, 1.0 - unit_distance * unit_distance));
        result["E_G_log"] = -std::log2(std::max(1e-300, 1.0 - unit_distance * unit_distance));
        result["distance"] = unit_distance;
        result["converged"] = r.converged;
        emit(opts, "entangle", json{{"in", in_path}, {"restarts", opts.restarts}, {"seed", opts.seed}}, result);
      }
      return opts.strict && !r.converged ? 3 : 0;
    }

    if (mc_prob->parsed()) {
      SpaceParams params(opts.n, opts.d);
      std::vector<ProbabilitySample> samples;
      const McReport rep =
          mc_probability(params, delta, opts.samples, SeedSpec{opts.seed, 0},
                         solver_options(opts), opts.workers,
                         samples_csv.empty() ? nullptr : &samples);
      if (!samples_csv.empty()) {
        std::string csv = "sample_index,distance,indicator\n";
        for (const auto& s : samples) {
          csv += std::to_string(s.index) + "," + csv_double(s.distance) + "," +
                 (s.close ? "1" : "0") + "\n";
        }
        write_text(samples_csv, csv);
      }
      json result = space_header(params);
      result["delta"] = delta;
      result["report"] = rep;
      emit(opts, "mc prob",
           json{{"n", opts.n}, {"d", opts.d}, {"delta", delta},
                {"samples", opts.samples}, {"seed", opts.seed},
                {"workers", opts.workers}, {"restarts", opts.restarts}},
           result);
      return opts.strict && rep.non_converged > 0 ? 3 : 0;
    }

    if (mc_goe->parsed()) {
      const McReport rep =
          mc_goe_det(goe_size, lambda, opts.samples, SeedSpec{opts.seed, 0}, opts.workers);
      json result{{"size", goe_size}, {"lambda", lambda}, {"report", rep}};
      emit(opts, "mc goe-det",
           json{{"size", goe_size}, {"lambda", lambda},
                {"samples", opts.samples}, {"seed", opts.seed}},
           result);
      return 0;
    }

    if (mc_wein->parsed()) {
      SpaceParams params(opts.n, opts.d);
      const WeingartenStats stats =
          mc_weingarten_stats(params, opts.samples, SeedSpec{opts.seed, 0}, opts.workers);
      json result = space_header(params);
      result["stats"] = stats;
      emit(opts, "mc weingarten",
           json{{"n", opts.n}, {"d", opts.d}, {"samples", opts.samples}, {"seed", opts.seed}},
           result);
      return 0;
    }

    if (mc_pull->parsed() || mc_curv->parsed()) {
      SpaceParams params(opts.n, opts.d);
      const FiniteDiffReport rep = mc_pull->parsed()
                                       ? check_metric_pullback(params, SeedSpec{opts.seed, 0})
                                       : check_geodesic_curvature(params, SeedSpec{opts.seed, 0});
      json result = space_header(params);
      result["report"] = rep;
      emit(opts, mc_pull->parsed() ? "mc pullback" : "mc curvature",
           json{{"n", opts.n}, {"d", opts.d}, {"seed", opts.seed}}, result);
      return 0;
    }

    if (sweep->parsed()) {
      SpaceParams params(opts.n, opts.d);
      std::vector<double> grid;
      if (!deltas_list.empty()) {
        std::stringstream ss(deltas_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
      } else {
        if (steps < 1) throw std::invalid_argument("sweep: need steps >= 1");
        for (int i = 0; i < steps; ++i)
          grid.push_back(steps == 1 ? delta_min
                                    : delta_min + (delta_max - delta_min) * i / (steps - 1.0));
      }
      if (grid.empty()) throw std::invalid_argument("sweep: empty delta grid");
      for (double g : grid) {
        if (g < 0.0 || g > 1.0)
          throw std::invalid_argument("sweep: grid must stay inside [0, 1]");
      }

      json rows = json::array();
      std::string csv = use_mc
                            ? "delta,probability,valid_range,mc_estimate,mc_std_error,mc_ci_low,mc_ci_high\n"
                            : "delta,probability,valid_range\n";
      for (double g : grid) {
        const RangedValue v = prob_close_rank_one(params, g);
        json row{{"delta", g}, {"probability", v.value}, {"valid_range", v.valid_range}};
        csv += csv_double(g) + "," + csv_double(v.value) + "," + (v.valid_range ? "1" : "0");
        if (use_mc) {
          const McReport rep = mc_probability(params, g, opts.samples, SeedSpec{opts.seed, 0},
                                              solver_options(opts), opts.workers);
          row["mc"] = rep;
          csv += "," + csv_double(rep.estimate) + "," + csv_double(rep.std_error) + "," +
                 csv_double(rep.ci_low) + "," + csv_double(rep.ci_high);
        }
        csv += "\n";
        rows.push_back(row);
      }
      if (opts.format == "csv") {
        write_text(opts.out, csv);
      } else {
        json result = space_header(params);
        result["rows"] = rows;
        emit(opts, "sweep",
             json{{"n", opts.n}, {"d", opts.d}, {"mc", use_mc},
                  {"samples", opts.samples}, {"seed", opts.seed}},
             result);
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> full;
  full.reserve(args.size() + 1);
  full.push_back("vtube");
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& s : full) argv.push_back(s.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace veronese::cli
