#include "veronese/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace veronese {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

StreamRng::StreamRng(SeedSpec spec) {
  state_ = mix64(spec.master_seed + kGolden * (spec.stream_index + 1));
}

std::uint64_t StreamRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double StreamRng::uniform() {
  // 53 random bits, shifted into (0, 1]
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double StreamRng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

GoeSample sample_goe(int n, SeedSpec seed) {
  if (n < 1) throw std::invalid_argument("sample_goe: need n >= 1");
  StreamRng rng(seed);
  Eigen::MatrixXd q(n, n);
  for (int i = 0; i < n; ++i) q(i, i) = rng.gaussian();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = rng.gaussian() * inv_sqrt2;
      q(i, j) = v;
      q(j, i) = v;
    }
  }
  return GoeSample{n, std::move(q)};
}

BWPolynomial sample_kostlan(const SpaceParams& params, SeedSpec seed) {
  StreamRng rng(seed);
  Eigen::VectorXd c(params.dim());
  for (Eigen::Index i = 0; i < params.dim(); ++i) c[i] = rng.gaussian();
  return BWPolynomial(params, std::move(c));
}

BWPolynomial sample_normal_w(const SpaceParams& params, SeedSpec seed) {
  StreamRng rng(seed);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(params.dim());
  for (Eigen::Index i = 0; i < params.dim(); ++i) {
    if (params.multi_index(i)[0] == params.d() - 2) c[i] = rng.gaussian();
  }
  return BWPolynomial(params, std::move(c));
}

}  // namespace veronese
