#include "veronese/mc_harness.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "veronese/tube_formula.hpp"
#include "veronese/veronese_geometry.hpp"

namespace veronese {

namespace {

// Master-seed salt separating solver restart streams from instance streams;
// both sides keep stream_index = sample ordinal.
constexpr std::uint64_t kSolverSalt = 0xa5a5a5a5a5a5a5a5ULL;

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) split into contiguous chunks, one thread each.
template <class Fn>
void parallel_samples(long long n, int workers, const Fn& fn) {
  const int w = std::min<long long>(resolve_workers(workers), std::max<long long>(n, 1));
  if (w <= 1) {
    for (long long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(w);
  const long long chunk = (n + w - 1) / w;
  for (int t = 0; t < w; ++t) {
    const long long lo = t * chunk;
    const long long hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &fn] {
      for (long long i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : threads) th.join();
}

// Neumaier-compensated sum in index order, so the result does not depend on
// how the samples were partitioned across workers.
double compensated_sum(const std::vector<double>& values) {
  double sum = 0.0;
  double comp = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

McReport make_mean_report(const std::vector<double>& values, SeedSpec seed,
                          double reference) {
  McReport rep;
  rep.n_samples = static_cast<long long>(values.size());
  rep.seed = seed;
  rep.reference = reference;
  rep.estimate = compensated_sum(values) / rep.n_samples;

  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - rep.estimate;
    sq[i] = d * d;
  }
  const double var =
      rep.n_samples > 1 ? compensated_sum(sq) / (rep.n_samples - 1.0) : 0.0;
  rep.std_error = std::sqrt(std::max(var, 0.0) / rep.n_samples);
  rep.ci_low = rep.estimate - rep.ci_z * rep.std_error;
  rep.ci_high = rep.estimate + rep.ci_z * rep.std_error;
  rep.z_score = rep.std_error > 0.0
                    ? (rep.estimate - rep.reference) / rep.std_error
                    : (rep.estimate == rep.reference ? 0.0
                                                     : std::numeric_limits<double>::infinity());
  return rep;
}

}  // namespace

McReport mc_probability(const SpaceParams& params, double delta, long long n_samples,
                        SeedSpec seed, const SolverOptions& opts, int workers,
                        std::vector<ProbabilitySample>* per_sample) {
  if (n_samples < 1) throw std::invalid_argument("mc_probability: need n_samples >= 1");
  if (delta < 0.0 || delta > 1.0)
    throw std::domain_error("mc_probability: need 0 <= delta <= 1");
  if (std::asin(delta) >= reach(params).rho)
    throw std::domain_error(
        "mc_probability: arcsin(delta) beyond the reach, closed form not exact");

  std::vector<double> indicator(static_cast<std::size_t>(n_samples), 0.0);
  std::vector<double> distances(static_cast<std::size_t>(n_samples), 0.0);
  std::vector<unsigned char> stuck(static_cast<std::size_t>(n_samples), 0);

  parallel_samples(n_samples, workers, [&](long long i) {
    const SeedSpec instance_seed{seed.master_seed, static_cast<std::uint64_t>(i)};
    const BWPolynomial p = sample_kostlan(params, instance_seed);
    SolverOptions per_opts = opts;
    per_opts.seed = SeedSpec{seed.master_seed ^ kSolverSalt,
                             static_cast<std::uint64_t>(i)};
    const RankOneResult r = best_rank_one(p, per_opts);
    distances[i] = r.distance;
    indicator[i] = r.distance <= delta * p.norm() ? 1.0 : 0.0;
    stuck[i] = r.converged ? 0 : 1;
  });

  McReport rep;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.reference = prob_close_rank_one(params, delta).value;
  rep.heuristic_oracle = params.n() >= 2 && params.d() >= 3;
  for (unsigned char s : stuck) rep.non_converged += s;

  const double hits = compensated_sum(indicator);
  rep.estimate = hits / n_samples;
  rep.std_error = std::sqrt(rep.estimate * (1.0 - rep.estimate) / n_samples);
  rep.ci_low = rep.estimate - rep.ci_z * rep.std_error;
  rep.ci_high = rep.estimate + rep.ci_z * rep.std_error;
  rep.z_score = rep.std_error > 0.0
                    ? (rep.estimate - rep.reference) / rep.std_error
                    : (rep.estimate == rep.reference ? 0.0
                                                     : std::numeric_limits<double>::infinity());

  if (per_sample != nullptr) {
    per_sample->resize(static_cast<std::size_t>(n_samples));
    for (long long i = 0; i < n_samples; ++i)
      (*per_sample)[i] = ProbabilitySample{i, distances[i], indicator[i] != 0.0};
  }
  return rep;
}

McReport mc_goe_det(int n, double lambda, long long n_samples, SeedSpec seed,
                    int workers) {
  if (n < 1) throw std::invalid_argument("mc_goe_det: need n >= 1");
  if (n_samples < 1) throw std::invalid_argument("mc_goe_det: need n_samples >= 1");

  std::vector<double> values(static_cast<std::size_t>(n_samples), 0.0);
  parallel_samples(n_samples, workers, [&](long long i) {
    const GoeSample q =
        sample_goe(n, SeedSpec{seed.master_seed, static_cast<std::uint64_t>(i)});
    const Eigen::MatrixXd m =
        Eigen::MatrixXd::Identity(n, n) - lambda * q.entries;
    values[i] = m.determinant();
  });

  return make_mean_report(values, seed, goe_det_expectation(n)(lambda));
}

WeingartenStats mc_weingarten_stats(const SpaceParams& params, long long n_samples,
                                    SeedSpec seed, int workers) {
  if (n_samples < 2)
    throw std::invalid_argument("mc_weingarten_stats: need n_samples >= 2");
  const int n = params.n();

  std::vector<Eigen::MatrixXd> mats(static_cast<std::size_t>(n_samples));
  parallel_samples(n_samples, workers, [&](long long i) {
    const BWPolynomial eta =
        sample_normal_w(params, SeedSpec{seed.master_seed, static_cast<std::uint64_t>(i)});
    mats[i] = weingarten(params, eta);
  });

  WeingartenStats stats;
  stats.n_samples = n_samples;
  stats.seed = seed;
  const double d = params.d();
  stats.ref_diag = 2.0 * (d - 1.0) / d;
  stats.ref_offdiag = (d - 1.0) / d;
  stats.variance = Eigen::MatrixXd::Zero(n, n);

  std::vector<double> column(static_cast<std::size_t>(n_samples));
  stats.max_abs_z = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (long long i = 0; i < n_samples; ++i) column[i] = mats[i](a, b);
      const double mean = compensated_sum(column) / n_samples;
      for (long long i = 0; i < n_samples; ++i) {
        const double dv = column[i] - mean;
        column[i] = dv * dv;
      }
      const double var = compensated_sum(column) / (n_samples - 1.0);
      stats.variance(a, b) = var;
      const double ref = a == b ? stats.ref_diag : stats.ref_offdiag;
      const double se = ref * std::sqrt(2.0 / n_samples);
      stats.max_abs_z = std::max(stats.max_abs_z, std::abs(var - ref) / se);
    }
  }
  return stats;
}

namespace {

Eigen::VectorXd random_unit(StreamRng& rng, int dim) {
  Eigen::VectorXd v(dim);
  do {
    for (int k = 0; k < dim; ++k) v[k] = rng.gaussian();
  } while (v.norm() < 1e-12);
  return v.normalized();
}

// ||d/dt veronese(cos t a + sin t b)|| at t = 0, central differences.
double veronese_speed(const SpaceParams& params, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& b, double h) {
  const auto at = [&](double t) {
    return veronese_point(params, std::cos(t) * a + std::sin(t) * b).coeffs();
  };
  return (at(h) - at(-h)).norm() / (2.0 * h);
}

// Norm of the projected second derivative of the arclength geodesic through
// veronese(a) in the direction b, second central differences.
double veronese_curvature(const SpaceParams& params, const Eigen::VectorXd& a,
                          const Eigen::VectorXd& b, double h) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(params.d()));
  const auto at = [&](double t) {
    t *= scale;
    return veronese_point(params, std::cos(t) * a + std::sin(t) * b).coeffs();
  };
  const Eigen::VectorXd base = at(0.0);
  Eigen::VectorXd second = (at(h) - 2.0 * base + at(-h)) / (h * h);
  second -= second.dot(base) * base;  // project onto T_base S^N
  return second.norm();
}

}  // namespace

FiniteDiffReport check_metric_pullback(const SpaceParams& params, SeedSpec seed,
                                       int trials) {
  constexpr double kH = 1e-5;
  constexpr double kDiagH = 1e-2;  // Richardson diagnostic runs where truncation dominates
  StreamRng rng(seed);
  FiniteDiffReport rep;
  rep.reference = pullback_factor(params);
  rep.trials = trials;

  double err_coarse = 0.0;
  double err_fine = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd a = random_unit(rng, params.n() + 1);
    Eigen::VectorXd b = random_unit(rng, params.n() + 1);
    b = (b - b.dot(a) * a).normalized();

    const double speed = veronese_speed(params, a, b, kH);
    rep.max_rel_error = std::max(rep.max_rel_error,
                                 std::abs(speed - rep.reference) / rep.reference);
    err_coarse += std::abs(veronese_speed(params, a, b, kDiagH) - rep.reference);
    err_fine += std::abs(veronese_speed(params, a, b, 0.5 * kDiagH) - rep.reference);
  }
  rep.convergence_ratio = err_fine > 0.0 ? err_coarse / err_fine : 0.0;
  return rep;
}

FiniteDiffReport check_geodesic_curvature(const SpaceParams& params, SeedSpec seed,
                                          int trials) {
  constexpr double kH = 1e-3;
  constexpr double kDiagH = 5e-2;
  StreamRng rng(seed);
  FiniteDiffReport rep;
  rep.reference = geodesic_curvature_norm(params);
  rep.trials = trials;

  double err_coarse = 0.0;
  double err_fine = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd a = random_unit(rng, params.n() + 1);
    Eigen::VectorXd b = random_unit(rng, params.n() + 1);
    b = (b - b.dot(a) * a).normalized();

    const double curv = veronese_curvature(params, a, b, kH);
    rep.max_rel_error = std::max(rep.max_rel_error,
                                 std::abs(curv - rep.reference) / rep.reference);
    err_coarse += std::abs(veronese_curvature(params, a, b, kDiagH) - rep.reference);
    err_fine += std::abs(veronese_curvature(params, a, b, 0.5 * kDiagH) - rep.reference);
  }
  rep.convergence_ratio = err_fine > 0.0 ? err_coarse / err_fine : 0.0;
  return rep;
}

}  // namespace veronese
