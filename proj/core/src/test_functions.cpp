#include "scatterqual/test_functions.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "scatterqual/error.hpp"

namespace scatterqual {

namespace {

int order_of(std::span<const int> alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

/// d^k/dx^k cos(w x) = w^k cos(w x + k pi/2)
double cos_derivative(double w, double x, int k) {
  return std::pow(w, k) * std::cos(w * x + 0.5 * std::numbers::pi * k);
}

}  // namespace

TestFunction tf_constant(int dim, double c) {
  TestFunction f;
  f.id = "constant";
  f.dim = dim;
  f.smoothness_s = 3;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  f.value = [c](std::span<const double>) { return c; };
  f.derivative = [c](std::span<const double>, std::span<const int> alpha) {
    return order_of(alpha) == 0 ? c : 0.0;
  };
  return f;
}

TestFunction tf_linear(int dim) {
  TestFunction f;
  f.id = "linear";
  f.dim = dim;
  f.smoothness_s = 3;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  std::vector<double> coef(static_cast<std::size_t>(dim), 0.0);
  coef[0] = 3.0;
  if (dim > 1) coef[1] = -2.0;
  f.value = [coef](std::span<const double> x) {
    double v = 7.0;
    for (std::size_t j = 0; j < coef.size(); ++j) v += coef[j] * x[j];
    return v;
  };
  f.derivative = [coef, val = f.value](std::span<const double> x, std::span<const int> alpha) {
    const int k = order_of(alpha);
    if (k == 0) return val(x);
    if (k > 1) return 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 1) return coef[j];
    }
    return 0.0;
  };
  return f;
}

TestFunction tf_quadratic(int dim) {
  TestFunction f;
  f.id = "quadratic";
  f.dim = dim;
  f.smoothness_s = 3;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  // 2 x1^2 - x1 x2 + 0.5 x2^2 + x1 - 3
  f.value = [dim](std::span<const double> x) {
    const double x1 = x[0];
    const double x2 = dim > 1 ? x[1] : 0.0;
    return 2 * x1 * x1 - x1 * x2 + 0.5 * x2 * x2 + x1 - 3.0;
  };
  f.derivative = [dim, val = f.value](std::span<const double> x, std::span<const int> alpha) {
    const int k = order_of(alpha);
    if (k == 0) return val(x);
    if (k > 2) return 0.0;
    const double x1 = x[0];
    const double x2 = dim > 1 ? x[1] : 0.0;
    const int a1 = alpha[0];
    const int a2 = alpha.size() > 1 ? alpha[1] : 0;
    if (k != a1 + a2) return 0.0;  // derivative along unused axes
    if (k == 1) {
      if (a1 == 1) return 4 * x1 - x2 + 1.0;
      return -x1 + x2;
    }
    if (a1 == 2) return 4.0;
    if (a1 == 1 && a2 == 1) return -1.0;
    return 1.0;  // a2 == 2
  };
  return f;
}

TestFunction tf_sincos(int dim, double frequency) {
  TestFunction f;
  f.id = "sincos";
  f.dim = dim;
  f.smoothness_s = 3;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  const double w = 2.0 * std::numbers::pi * frequency;
  // sin(w x1) * cos(w x2) * ... — sin on the first axis, cos on the rest
  f.value = [w, dim](std::span<const double> x) {
    double v = std::sin(w * x[0]);
    for (int j = 1; j < dim; ++j) v *= std::cos(w * x[static_cast<std::size_t>(j)]);
    return v;
  };
  f.derivative = [w, dim](std::span<const double> x, std::span<const int> alpha) {
    double v = 1.0;
    for (int j = 0; j < dim; ++j) {
      const int k = alpha[static_cast<std::size_t>(j)];
      const double xj = x[static_cast<std::size_t>(j)];
      if (j == 0) {
        // d^k sin(w x) = w^k sin(w x + k pi/2)
        v *= std::pow(w, k) * std::sin(w * xj + 0.5 * std::numbers::pi * k);
      } else {
        v *= cos_derivative(w, xj, k);
      }
    }
    return v;
  };
  return f;
}

TestFunction tf_multiscale(int dim, int levels) {
  TestFunction f;
  f.id = "multiscale" + std::to_string(levels);
  f.dim = dim;
  f.smoothness_s = 2;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  f.value = [dim, levels](std::span<const double> x) {
    double sum = 0.0;
    for (int j = 0; j <= levels; ++j) {
      const double w = std::numbers::pi * std::pow(2.0, j);
      double term = std::pow(0.25, j);
      for (int i = 0; i < dim; ++i) term *= std::cos(w * x[static_cast<std::size_t>(i)]);
      sum += term;
    }
    return sum;
  };
  f.derivative = [dim, levels](std::span<const double> x, std::span<const int> alpha) {
    double sum = 0.0;
    for (int j = 0; j <= levels; ++j) {
      const double w = std::numbers::pi * std::pow(2.0, j);
      double term = std::pow(0.25, j);
      for (int i = 0; i < dim; ++i) {
        term *= cos_derivative(w, x[static_cast<std::size_t>(i)], alpha[static_cast<std::size_t>(i)]);
      }
      sum += term;
    }
    return sum;
  };
  return f;
}

TestFunction tf_gaussian(int dim, double width) {
  TestFunction f;
  f.id = "gaussian";
  f.dim = dim;
  f.smoothness_s = 3;
  f.smoothness_p = std::numeric_limits<double>::infinity();
  const double a = 1.0 / (2.0 * width * width);
  // exp(-a ||x - 0.5||^2), separable: product of g(x_i) = exp(-a t^2)
  auto g_deriv = [a](double xi, int k) {
    const double t = xi - 0.5;
    const double g = std::exp(-a * t * t);
    switch (k) {
      case 0: return g;
      case 1: return -2 * a * t * g;
      case 2: return (4 * a * a * t * t - 2 * a) * g;
      case 3: return (12 * a * a * t - 8 * a * a * a * t * t * t) * g;
      default: throw InputError("gaussian: derivatives supported to order 3");
    }
  };
  f.value = [a, dim](std::span<const double> x) {
    double s = 0;
    for (int i = 0; i < dim; ++i) {
      const double t = x[static_cast<std::size_t>(i)] - 0.5;
      s += t * t;
    }
    return std::exp(-a * s);
  };
  f.derivative = [g_deriv, dim](std::span<const double> x, std::span<const int> alpha) {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= g_deriv(x[static_cast<std::size_t>(i)], alpha[static_cast<std::size_t>(i)]);
    return v;
  };
  return f;
}

std::vector<std::vector<int>> multi_indices_up_to(int dim, int max_order) {
  std::vector<std::vector<int>> out;
  std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
  for (int total = 0; total <= max_order; ++total) {
    // enumerate alpha with |alpha| == total in lexicographic order
    std::function<void(int, int)> rec = [&](int axis, int remaining) {
      if (axis == dim - 1) {
        alpha[static_cast<std::size_t>(axis)] = remaining;
        out.push_back(alpha);
        return;
      }
      for (int a = remaining; a >= 0; --a) {
        alpha[static_cast<std::size_t>(axis)] = a;
        rec(axis + 1, remaining - a);
      }
    };
    rec(0, total);
  }
  return out;
}

double sobolev_norm_grid(const TestFunction& f, const ConvexDomain& domain, int s, double p, double mesh) {
  if (s < 0 || s > 3) throw InputError("sobolev_norm_grid: s must be in 0..3");
  const int d = domain.dim();
  const auto alphas = multi_indices_up_to(d, s);
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  std::vector<int> counts(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    counts[static_cast<std::size_t>(j)] =
        std::max(1, static_cast<int>(std::ceil((hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / mesh)));
  }
  double cell_vol = 1.0;
  for (int j = 0; j < d; ++j) {
    cell_vol *= (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / counts[static_cast<std::size_t>(j)];
  }

  const bool max_form = std::isinf(p);
  std::vector<double> acc(alphas.size(), 0.0);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  bool any = false;
  for (;;) {
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] +
                                       (idx[static_cast<std::size_t>(j)] + 0.5) *
                                           (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) /
                                           counts[static_cast<std::size_t>(j)];
    }
    if (domain.contains(x)) {
      any = true;
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double v = std::fabs(f.derivative(x, alphas[a]));
        if (max_form) {
          acc[a] = std::max(acc[a], v);
        } else {
          acc[a] += std::pow(v, p) * cell_vol;
        }
      }
    }
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == counts[static_cast<std::size_t>(axis)]) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  if (!any) throw NumericalError("sobolev_norm_grid: no probe point in the domain");

  if (max_form) {
    double m = 0;
    for (double v : acc) m = std::max(m, v);
    return m;
  }
  double total = 0;
  for (double v : acc) total += v;
  return std::pow(total, 1.0 / p);
}

}  // namespace scatterqual
