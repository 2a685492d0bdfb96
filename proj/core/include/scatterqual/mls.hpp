#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "scatterqual/distance_norms.hpp"
#include "scatterqual/geometry.hpp"
#include "scatterqual/good_cover.hpp"
#include "scatterqual/point_set.hpp"

namespace scatterqual {

/// Compactly supported weight profile (1-t)^4 (4t+1) on [0,1), 0 outside.
double wendland_weight(double t);

struct MlsOptions {
  int degree = 2;
  /// Support radius multiplier on the local fill scale.
  double support_factor = 3.0;
  /// Fallback ladder: grow the radius by `growth` up to `max_growth` times,
  /// then reduce the degree.
  double growth = 1.5;
  int max_growth = 4;
  double solve_tol = 1e-8;
  int threads = 0;
};

/// Sparse generalized weights u_x(y) of weighted local polynomial regression:
/// exact reproduction of polynomials up to degree_used at y, zero outside
/// radius_used.
struct MlsWeights {
  std::vector<std::size_t> indices;
  std::vector<double> weights;
  int degree_used = -1;
  double radius_used = 0.0;
};

/// Throws NumericalError("isolated evaluation point") when the fallback
/// ladder is exhausted.
MlsWeights mls_weights(std::span<const double> y, const GridIndex& index, int degree, double radius,
                       const MlsOptions& opts = {});

enum class ApproxPolicy { Global, GoodCover };

struct ApproxOptions {
  MlsOptions mls;
  ApproxPolicy policy = ApproxPolicy::Global;
  /// Global policy: one support radius for every evaluation point, normally
  /// support_factor times the certified covering radius (see
  /// global_support_radius).
  double global_radius = 0.0;
  /// Good-cover policy: per point, the first containing cube i (construction
  /// order) sets the radius to support_factor * c * r_i.
  const GoodCover* cover = nullptr;
};

double global_support_radius(const NormEstimate& covering, const MlsOptions& opts);

struct ApproxResult {
  std::vector<double> values;
  std::vector<std::uint8_t> ok;
  std::size_t failure_count = 0;
};

/// S_P(f) at the evaluation points. Per-point failures are reported and the
/// point excluded, never silently filled.
ApproxResult approximate(const std::function<double(std::span<const double>)>& f, const GridIndex& index,
                         const PointSet& eval_points, const ApproxOptions& opts);

/// In-domain midpoint-cell evaluation grid for residual norms.
struct EvalGrid {
  PointSet centers;
  double cell_volume = 0.0;
  double mesh = 0.0;
};

EvalGrid make_eval_grid(const ConvexDomain& domain, double mesh);

/// Grid L_q norm of a residual sampled at the grid centers (q = infinity is
/// the max). No Lipschitz certificate is claimed for generic residuals; when
/// values on the half-mesh grid are supplied the bracket records the two-mesh
/// spread as a refinement diagnostic.
NormEstimate lq_error(double q, const EvalGrid& grid, std::span<const double> residual,
                      const EvalGrid* half_grid = nullptr, std::span<const double> residual_half = {});

}  // namespace scatterqual
