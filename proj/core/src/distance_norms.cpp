#include "scatterqual/distance_norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scatterqual/error.hpp"
#include "scatterqual/parallel.hpp"

namespace scatterqual {

namespace {

struct CellGrid {
  std::vector<double> lo;
  std::vector<std::size_t> counts;  // cells per axis
  double mesh = 0.0;
  std::size_t total = 1;

  CellGrid(const ConvexDomain& domain, double mesh_in) : mesh(mesh_in) {
    if (!(mesh > 0)) throw InputError("mesh must be positive");
    lo = domain.lower();
    const auto& hi = domain.upper();
    counts.resize(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j) {
      counts[j] = static_cast<std::size_t>(std::ceil((hi[j] - lo[j]) / mesh - 1e-12));
      if (counts[j] == 0) counts[j] = 1;
      total *= counts[j];
    }
  }

  void cell_of(std::size_t linear, std::span<double> cell_lo, std::span<double> cell_hi,
               std::span<double> center) const {
    for (std::size_t j = counts.size(); j-- > 0;) {
      const std::size_t i = linear % counts[j];
      linear /= counts[j];
      cell_lo[j] = lo[j] + static_cast<double>(i) * mesh;
      cell_hi[j] = cell_lo[j] + mesh;
      center[j] = cell_lo[j] + 0.5 * mesh;
    }
  }
};

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

constexpr std::size_t kChunk = 8192;

}  // namespace

std::string norm_method_name(NormMethod m) {
  switch (m) {
    case NormMethod::GridCertified: return "grid-certified";
    case NormMethod::MonteCarlo: return "monte-carlo";
    case NormMethod::Exact1d: return "exact-1d";
    case NormMethod::GridTwoMesh: return "grid-two-mesh";
  }
  return "?";
}

NormEstimate lgamma_norm(const ConvexDomain& domain, const GridIndex& index, double gamma, double mesh,
                         int threads) {
  if (std::isinf(gamma)) return covering_radius(domain, index, mesh, threads);
  if (!(gamma > 0)) throw InputError("lgamma_norm: gamma must be positive");
  if (domain.dim() != index.points().dim) throw InputError("lgamma_norm: dimension mismatch");

  const int d = domain.dim();
  const CellGrid grid(domain, mesh);
  const double cell_vol = std::pow(mesh, d);
  const double delta = 0.5 * mesh * std::sqrt(static_cast<double>(d));

  const std::size_t nchunks = (grid.total + kChunk - 1) / kChunk;
  std::vector<double> chunk_value(nchunks, 0.0), chunk_lower(nchunks, 0.0), chunk_upper(nchunks, 0.0);
  std::vector<std::size_t> chunk_centers(nchunks, 0);

  parallel_chunks(grid.total, kChunk, threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    std::vector<double> cl(static_cast<std::size_t>(d)), ch(static_cast<std::size_t>(d)), cc(static_cast<std::size_t>(d));
    KahanSum value, lower, upper;
    std::size_t centers_in = 0;
    for (std::size_t i = begin; i < end; ++i) {
      grid.cell_of(i, cl, ch, cc);
      const CellRelation rel = domain.classify_cell(cl, ch);
      if (rel == CellRelation::Outside) continue;
      const double dist = index.nearest_distance(cc);
      if (rel == CellRelation::Inside) {
        lower.add(std::pow(std::max(0.0, dist - delta), gamma) * cell_vol);
      }
      upper.add(std::pow(dist + delta, gamma) * cell_vol);
      if (domain.contains(cc)) {
        value.add(std::pow(dist, gamma) * cell_vol);
        ++centers_in;
      }
    }
    chunk_value[ci] = value.sum;
    chunk_lower[ci] = lower.sum;
    chunk_upper[ci] = upper.sum;
    chunk_centers[ci] = centers_in;
  });

  KahanSum value, lower, upper;
  std::size_t centers_in = 0;
  for (std::size_t ci = 0; ci < nchunks; ++ci) {
    value.add(chunk_value[ci]);
    lower.add(chunk_lower[ci]);
    upper.add(chunk_upper[ci]);
    centers_in += chunk_centers[ci];
  }
  if (centers_in == 0) throw NumericalError("lgamma_norm: mesh too coarse, no cell center lies in the domain");

  NormEstimate est;
  est.gamma = gamma;
  est.method = NormMethod::GridCertified;
  est.value = std::pow(value.sum, 1.0 / gamma);
  est.lower = std::pow(lower.sum, 1.0 / gamma);
  est.upper = std::pow(upper.sum, 1.0 / gamma);
  return est;
}

NormEstimate covering_radius(const ConvexDomain& domain, const GridIndex& index, double mesh, int threads) {
  if (domain.dim() != index.points().dim) throw InputError("covering_radius: dimension mismatch");
  const int d = domain.dim();
  const CellGrid grid(domain, mesh);
  const double delta = 0.5 * mesh * std::sqrt(static_cast<double>(d));

  const std::size_t nchunks = (grid.total + kChunk - 1) / kChunk;
  std::vector<double> chunk_max(nchunks, -1.0);

  parallel_chunks(grid.total, kChunk, threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
    std::vector<double> cl(static_cast<std::size_t>(d)), ch(static_cast<std::size_t>(d)), cc(static_cast<std::size_t>(d));
    double m = -1.0;
    for (std::size_t i = begin; i < end; ++i) {
      grid.cell_of(i, cl, ch, cc);
      if (!domain.contains(cc)) continue;
      m = std::max(m, index.nearest_distance(cc));
    }
    chunk_max[ci] = m;
  });

  double lower = -1.0;
  for (double m : chunk_max) lower = std::max(lower, m);
  if (lower < 0) throw NumericalError("covering_radius: mesh too coarse, no cell center lies in the domain");

  NormEstimate est;
  est.gamma = kGammaInf;
  est.method = NormMethod::GridCertified;
  est.lower = lower;
  est.upper = lower + delta;
  est.value = lower + 0.5 * delta;
  return est;
}

namespace {
std::vector<double> sorted_1d(const PointSet& ps, double a, double b) {
  if (ps.dim != 1) throw InputError("1d oracle: point set must be one-dimensional");
  if (ps.empty()) throw InputError("1d oracle: empty point set");
  std::vector<double> xs(ps.coords);
  std::sort(xs.begin(), xs.end());
  if (xs.front() < a - 1e-12 || xs.back() > b + 1e-12) {
    throw InputError("1d oracle: points outside the interval");
  }
  return xs;
}
}  // namespace

double lgamma_norm_1d_exact(double a, double b, const PointSet& ps, double gamma) {
  if (!(gamma > 0) || std::isinf(gamma)) throw InputError("1d oracle: gamma must be finite positive");
  const auto xs = sorted_1d(ps, a, b);
  const double e = gamma + 1.0;
  double total = 0.0;
  total += std::pow(std::max(0.0, xs.front() - a), e) / e;
  total += std::pow(std::max(0.0, b - xs.back()), e) / e;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double g = xs[i] - xs[i - 1];
    total += 2.0 * std::pow(0.5 * g, e) / e;
  }
  return std::pow(total, 1.0 / gamma);
}

double covering_radius_1d_exact(double a, double b, const PointSet& ps) {
  const auto xs = sorted_1d(ps, a, b);
  double h = std::max(std::max(0.0, xs.front() - a), std::max(0.0, b - xs.back()));
  for (std::size_t i = 1; i < xs.size(); ++i) h = std::max(h, 0.5 * (xs[i] - xs[i - 1]));
  return h;
}

}  // namespace scatterqual
