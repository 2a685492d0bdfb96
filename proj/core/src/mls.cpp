#include "scatterqual/mls.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "scatterqual/error.hpp"
#include "scatterqual/parallel.hpp"
#include "scatterqual/test_functions.hpp"

namespace scatterqual {

double wendland_weight(double t) {
  if (t >= 1.0 || t < 0.0) return 0.0;
  const double s = 1.0 - t;
  const double s2 = s * s;
  return s2 * s2 * (4.0 * t + 1.0);
}

namespace {

/// Rows are the monomial basis evaluated at (x - y)/rho; the constant
/// monomial comes first, so the basis value at y itself is e_0.
void basis_row(std::span<const double> scaled, const std::vector<std::vector<int>>& alphas,
               Eigen::Ref<Eigen::RowVectorXd> row) {
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    double v = 1.0;
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      for (int k = 0; k < alphas[a][j]; ++k) v *= scaled[j];
    }
    row(static_cast<Eigen::Index>(a)) = v;
  }
}

bool try_weights(std::span<const double> y, const GridIndex& index, int degree, double radius,
                 double solve_tol, MlsWeights& out) {
  const PointSet& ps = index.points();
  const int d = ps.dim;
  const auto alphas = multi_indices_up_to(d, degree);
  const std::size_t nbasis = alphas.size();

  std::vector<std::size_t> nbrs;
  index.gather_within(y, radius, nbrs);
  if (nbrs.size() < nbasis) return false;

  // drop zero-weight points (on the support boundary)
  std::vector<std::size_t> active;
  std::vector<double> wts;
  std::vector<double> scaled(static_cast<std::size_t>(d));
  for (std::size_t i : nbrs) {
    const double t = euclidean_distance(ps.point(i), y) / radius;
    const double w = wendland_weight(t);
    if (w > 0) {
      active.push_back(i);
      wts.push_back(w);
    }
  }
  if (active.size() < nbasis) return false;

  const Eigen::Index n = static_cast<Eigen::Index>(active.size());
  const Eigen::Index m = static_cast<Eigen::Index>(nbasis);
  Eigen::MatrixXd A(n, m);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto p = ps.point(active[static_cast<std::size_t>(r)]);
    for (int j = 0; j < d; ++j) scaled[static_cast<std::size_t>(j)] = (p[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(j)]) / radius;
    basis_row(scaled, alphas, A.row(r));
  }
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(wts.data(), n);

  // normal equations of the weighted local regression, evaluated at y
  Eigen::MatrixXd G = A.transpose() * w.asDiagonal() * A;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(0) = 1.0;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success) return false;
  Eigen::VectorXd lambda = ldlt.solve(rhs);
  const double residual = (G * lambda - rhs).norm();
  if (!(residual <= solve_tol * std::max(1.0, lambda.norm()))) return false;

  Eigen::VectorXd u = w.asDiagonal() * (A * lambda);
  // degree-0 reproduction is the cheapest solvability witness
  if (std::fabs(u.sum() - 1.0) > 1e-7) return false;

  out.indices = std::move(active);
  out.weights.assign(u.data(), u.data() + u.size());
  out.degree_used = degree;
  out.radius_used = radius;
  return true;
}

}  // namespace

MlsWeights mls_weights(std::span<const double> y, const GridIndex& index, int degree, double radius,
                       const MlsOptions& opts) {
  if (!(radius > 0)) throw InputError("mls_weights: radius must be positive");
  if (degree < 0) throw InputError("mls_weights: degree must be >= 0");
  MlsWeights out;
  for (int deg = degree; deg >= 0; --deg) {
    double rho = radius;
    for (int attempt = 0; attempt <= opts.max_growth; ++attempt) {
      if (try_weights(y, index, deg, rho, opts.solve_tol, out)) return out;
      rho *= opts.growth;
    }
  }
  throw NumericalError("mls_weights: isolated evaluation point");
}

double global_support_radius(const NormEstimate& covering, const MlsOptions& opts) {
  return opts.support_factor * covering.upper;
}

ApproxResult approximate(const std::function<double(std::span<const double>)>& f, const GridIndex& index,
                         const PointSet& eval_points, const ApproxOptions& opts) {
  if (opts.policy == ApproxPolicy::GoodCover && (opts.cover == nullptr || opts.cover->cubes.empty())) {
    throw InputError("approximate: good-cover policy requires a cover");
  }
  if (opts.policy == ApproxPolicy::Global && !(opts.global_radius > 0)) {
    throw InputError("approximate: global policy requires a positive radius");
  }

  const PointSet& ps = index.points();
  std::vector<double> fvals(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) fvals[i] = f(ps.point(i));

  ApproxResult res;
  res.values.assign(eval_points.size(), 0.0);
  res.ok.assign(eval_points.size(), 0);
  std::vector<std::uint8_t> failed(eval_points.size(), 0);

  parallel_for(eval_points.size(), opts.mls.threads, [&](std::size_t k) {
    const auto y = eval_points.point(k);
    double radius = opts.global_radius;
    if (opts.policy == ApproxPolicy::GoodCover) {
      // first containing cube in construction order (the paper's
      // disjointification of Omega into Omega_i)
      radius = 0.0;
      for (const auto& cube : opts.cover->cubes) {
        if (linf_distance(y, cube.center) <= cube.radius) {
          radius = opts.mls.support_factor * opts.cover->cube_constant * cube.radius;
          break;
        }
      }
      if (radius == 0.0) {
        failed[k] = 1;
        return;
      }
    }
    try {
      const MlsWeights w = mls_weights(y, index, opts.mls.degree, radius, opts.mls);
      double v = 0;
      for (std::size_t i = 0; i < w.indices.size(); ++i) v += w.weights[i] * fvals[w.indices[i]];
      res.values[k] = v;
      res.ok[k] = 1;
    } catch (const NumericalError&) {
      failed[k] = 1;
    }
  });

  for (std::size_t k = 0; k < eval_points.size(); ++k) {
    if (failed[k]) ++res.failure_count;
  }
  return res;
}

EvalGrid make_eval_grid(const ConvexDomain& domain, double mesh) {
  if (!(mesh > 0)) throw InputError("make_eval_grid: mesh must be positive");
  const int d = domain.dim();
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  std::vector<std::size_t> counts(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    counts[static_cast<std::size_t>(j)] = static_cast<std::size_t>(
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil((hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / mesh - 1e-12))));
  }
  EvalGrid grid;
  grid.mesh = mesh;
  grid.cell_volume = std::pow(mesh, d);
  grid.centers = PointSet(d);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + (static_cast<double>(idx[static_cast<std::size_t>(j)]) + 0.5) * mesh;
    }
    if (domain.contains(x)) grid.centers.push_back(x);
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == counts[static_cast<std::size_t>(axis)]) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  if (grid.centers.empty()) throw NumericalError("make_eval_grid: no cell center lies in the domain");
  return grid;
}

NormEstimate lq_error(double q, const EvalGrid& grid, std::span<const double> residual,
                      const EvalGrid* half_grid, std::span<const double> residual_half) {
  if (residual.size() != grid.centers.size()) throw InputError("lq_error: residual size mismatch");

  auto grid_norm = [q](const EvalGrid& g, std::span<const double> r) {
    if (std::isinf(q)) {
      double m = 0;
      for (double v : r) m = std::max(m, std::fabs(v));
      return m;
    }
    double s = 0;
    for (double v : r) s += std::pow(std::fabs(v), q) * g.cell_volume;
    return std::pow(s, 1.0 / q);
  };

  NormEstimate est;
  est.gamma = q;
  est.method = NormMethod::GridTwoMesh;
  est.value = grid_norm(grid, residual);
  if (half_grid != nullptr) {
    if (residual_half.size() != half_grid->centers.size()) throw InputError("lq_error: half-mesh residual size mismatch");
    const double fine = grid_norm(*half_grid, residual_half);
    est.lower = std::min(est.value, fine);
    est.upper = std::max(est.value, fine);
  } else {
    est.lower = est.upper = est.value;
  }
  return est;
}

}  // namespace scatterqual
