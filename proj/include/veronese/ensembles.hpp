#pragma once

#include <Eigen/Core>

#include <cstdint>

#include "veronese/tensor_space.hpp"

namespace veronese {

/// Identifies one logical random stream. The sample produced from a SeedSpec
/// is a pure function of (master_seed, stream_index): Monte-Carlo loops give
/// each sample its own stream_index, so results do not depend on worker count
/// or call interleaving.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

/// Counter-based generator (splitmix64 with a per-stream start state).
/// Gaussian variates come from the basic Box-Muller transform, so the whole
/// draw sequence of a stream is fixed by its SeedSpec. Value-like: copy it,
/// never share it.
class StreamRng {
 public:
  explicit StreamRng(SeedSpec spec);

  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double uniform();
  /// Standard normal.
  double gaussian();

 private:
  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// A draw from GOE(n): diagonal entries N(0,1), off-diagonal N(0,1/2),
/// independent up to symmetry. Built as
///   Q = sum_i eta_ii E_ii + sum_{i<j} eta_ij (E_ij + E_ji)/sqrt(2)
/// with i.i.d. standard Gaussians eta, drawn diagonal-first, then the upper
/// triangle in row-major order.
struct GoeSample {
  int n = 0;
  Eigen::MatrixXd entries;
};

GoeSample sample_goe(int n, SeedSpec seed);

/// A Bombieri-Weyl (Kostlan) random polynomial: every BW coordinate an
/// independent standard Gaussian, drawn in canonical index order. Under the
/// tensor identification this is the Frobenius Gaussian symmetric tensor.
BWPolynomial sample_kostlan(const SpaceParams& params, SeedSpec seed);

/// Gaussian vector supported on the W part of the Veronese normal space at
/// x_0^d: standard Gaussian coefficients on exactly the basis monomials
/// x_0^{d-2} x_i x_j (i, j >= 1), zero elsewhere. For d = 2 this is the whole
/// normal space.
BWPolynomial sample_normal_w(const SpaceParams& params, SeedSpec seed);

}  // namespace veronese
