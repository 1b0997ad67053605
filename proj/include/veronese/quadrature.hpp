#pragma once

#include <functional>

namespace veronese::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

/// Globally adaptive Gauss-Kronrod (G7, K15) integration of f over [a, b].
/// Splits the interval with the largest error estimate until the total
/// estimated error is below max(abs_tol, rel_tol * |integral|).
double integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace veronese::quad
