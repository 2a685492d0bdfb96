#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "scatterqual/geometry.hpp"

namespace scatterqual {

/// Evaluator plus analytic partial derivatives up to order 3, with the
/// smoothness class it is meant to exercise.
struct TestFunction {
  std::string id;
  int dim = 0;
  double smoothness_s = 0.0;
  double smoothness_p = 0.0;
  std::function<double(std::span<const double>)> value;
  /// alpha is a multi-index with |alpha| <= 3.
  std::function<double(std::span<const double>, std::span<const int>)> derivative;
};

TestFunction tf_constant(int dim, double c = 7.0);
TestFunction tf_linear(int dim);        // 3 x1 - 2 x2 + 7 (trailing axes unused)
TestFunction tf_quadratic(int dim);
TestFunction tf_sincos(int dim, double frequency = 2.0);  // sin(2 pi f x1) cos(2 pi f x2) ...

/// Lacunary cosine sum  sum_{j=0}^{levels} 4^{-j} prod_i cos(2^j pi x_i).
/// Second derivatives stay O(levels) while third derivatives grow like 2^j,
/// so on meshes coarser than 2^{-levels} it behaves like a rough W^{2,inf}
/// element rather than an analytic one.
TestFunction tf_multiscale(int dim, int levels);

TestFunction tf_gaussian(int dim, double width = 0.35);

/// All multi-indices of total order <= max_order in dim variables,
/// graded lexicographic.
std::vector<std::vector<int>> multi_indices_up_to(int dim, int max_order);

/// W^{s,p}(Omega) norm via derivative probing on a midpoint grid:
/// (sum_{|a|<=s} ||D^a f||_p^p)^{1/p}, max-form for p = infinity.
double sobolev_norm_grid(const TestFunction& f, const ConvexDomain& domain, int s, double p, double mesh);

}  // namespace scatterqual
