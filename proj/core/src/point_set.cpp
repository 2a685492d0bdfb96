#include "scatterqual/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "scatterqual/csv.hpp"
#include "scatterqual/error.hpp"
#include "scatterqual/rng.hpp"

namespace scatterqual {

void PointSet::push_back(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim) throw InputError("push_back: point dimension mismatch");
  coords.insert(coords.end(), p.begin(), p.end());
}

bool PointSet::has_duplicates() const {
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = point(a), pb = point(b);
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  });
  for (std::size_t k = 1; k < idx.size(); ++k) {
    const auto a = point(idx[k - 1]), b = point(idx[k]);
    if (std::equal(a.begin(), a.end(), b.begin())) return true;
  }
  return false;
}

PointSet read_points_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open points file: " + path);
  PointSet ps;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (header && lineno == 1) continue;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = csv_split(line);
    if (ps.dim == 0) ps.dim = static_cast<int>(fields.size());
    if (static_cast<int>(fields.size()) != ps.dim) {
      throw InputError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(ps.dim) + " columns");
    }
    for (const auto& f : fields) {
      try {
        std::size_t used = 0;
        const double v = std::stod(f, &used);
        if (used != f.size() || !std::isfinite(v)) throw std::invalid_argument(f);
        ps.coords.push_back(v);
      } catch (const std::exception&) {
        throw InputError(path + ":" + std::to_string(lineno) + ": bad number '" + f + "'");
      }
    }
  }
  if (ps.empty()) throw InputError("empty point file: " + path);
  return ps;
}

void write_points_csv(const std::string& path, const PointSet& ps, bool header) {
  std::string text;
  if (header) {
    std::vector<std::string> cols;
    for (int j = 0; j < ps.dim; ++j) cols.push_back("x" + std::to_string(j + 1));
    text += csv_join(cols) + "\n";
  }
  std::vector<std::string> row(static_cast<std::size_t>(ps.dim));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = ps.point(i);
    for (int j = 0; j < ps.dim; ++j) row[static_cast<std::size_t>(j)] = format_number(p[static_cast<std::size_t>(j)]);
    text += csv_join(row) + "\n";
  }
  write_file_atomic(path, text);
}

GridIndex::GridIndex(PointSet ps, double cell_size) : ps_(std::move(ps)) {
  if (ps_.empty()) throw InputError("GridIndex: empty point set");
  const int d = ps_.dim;
  origin_.assign(static_cast<std::size_t>(d), 0.0);
  std::vector<double> hi(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j < d; ++j) {
    origin_[static_cast<std::size_t>(j)] = std::numeric_limits<double>::infinity();
    hi[static_cast<std::size_t>(j)] = -std::numeric_limits<double>::infinity();
  }
  for (std::size_t i = 0; i < ps_.size(); ++i) {
    const auto p = ps_.point(i);
    for (int j = 0; j < d; ++j) {
      origin_[static_cast<std::size_t>(j)] = std::min(origin_[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j)]);
      hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j)]);
    }
  }
  if (cell_size > 0) {
    cell_ = cell_size;
  } else {
    double diag2 = 0;
    for (int j = 0; j < d; ++j) {
      const double s = hi[static_cast<std::size_t>(j)] - origin_[static_cast<std::size_t>(j)];
      diag2 += s * s;
    }
    const double per_axis = std::ceil(std::pow(static_cast<double>(ps_.size()), 1.0 / d));
    cell_ = std::sqrt(diag2) / std::max(1.0, per_axis);
    if (!(cell_ > 0)) cell_ = 1.0;  // all points coincide
  }

  cells_lo_.assign(static_cast<std::size_t>(d), 0);
  cells_hi_.assign(static_cast<std::size_t>(d), 0);
  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < ps_.size(); ++i) {
    locate(ps_.point(i), c);
    for (int j = 0; j < d; ++j) {
      cells_lo_[static_cast<std::size_t>(j)] = std::min(cells_lo_[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]);
      cells_hi_[static_cast<std::size_t>(j)] = std::max(cells_hi_[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]);
    }
    buckets_[key_of(c)].push_back(static_cast<std::uint32_t>(i));
  }
}

void GridIndex::locate(std::span<const double> x, std::vector<std::int64_t>& cell) const {
  for (int j = 0; j < ps_.dim; ++j) {
    cell[static_cast<std::size_t>(j)] =
        static_cast<std::int64_t>(std::floor((x[static_cast<std::size_t>(j)] - origin_[static_cast<std::size_t>(j)]) / cell_));
  }
}

std::uint64_t GridIndex::key_of(const std::vector<std::int64_t>& cell) const {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::int64_t v : cell) {
    std::uint64_t s = h ^ static_cast<std::uint64_t>(v);
    h = splitmix64(s);
  }
  return h;
}

void GridIndex::nearest(std::span<const double> x, double& best_d2, std::size_t& best_i) const {
  if (static_cast<int>(x.size()) != ps_.dim) throw InputError("nearest: point dimension mismatch");
  const int d = ps_.dim;
  std::vector<std::int64_t> home(static_cast<std::size_t>(d));
  locate(x, home);

  best_d2 = std::numeric_limits<double>::infinity();
  best_i = 0;

  // widest ring that can still touch an occupied cell
  std::int64_t kmax = 0;
  for (int j = 0; j < d; ++j) {
    kmax = std::max(kmax, std::llabs(home[static_cast<std::size_t>(j)] - cells_lo_[static_cast<std::size_t>(j)]));
    kmax = std::max(kmax, std::llabs(home[static_cast<std::size_t>(j)] - cells_hi_[static_cast<std::size_t>(j)]));
  }

  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  auto scan_cell = [&](const std::vector<std::int64_t>& cc) {
    auto it = buckets_.find(key_of(cc));
    if (it == buckets_.end()) return;
    for (std::uint32_t idx : it->second) {
      const double d2 = squared_distance(x, ps_.point(idx));
      if (d2 < best_d2 || (d2 == best_d2 && idx < best_i)) {
        best_d2 = d2;
        best_i = idx;
      }
    }
  };

  for (std::int64_t k = 0;; ++k) {
    // cells at Chebyshev distance exactly k from the home cell, clamped to
    // the occupied range
    bool any = false;
    std::function<void(int, bool)> rec = [&](int axis, bool boundary_hit) {
      if (axis == d) {
        if (boundary_hit) {
          any = true;
          scan_cell(c);
        }
        return;
      }
      const std::int64_t lo = std::max(home[static_cast<std::size_t>(axis)] - k, cells_lo_[static_cast<std::size_t>(axis)]);
      const std::int64_t hi = std::min(home[static_cast<std::size_t>(axis)] + k, cells_hi_[static_cast<std::size_t>(axis)]);
      for (std::int64_t v = lo; v <= hi; ++v) {
        c[static_cast<std::size_t>(axis)] = v;
        rec(axis + 1, boundary_hit || std::llabs(v - home[static_cast<std::size_t>(axis)]) == k);
      }
    };
    rec(0, false);
    (void)any;

    // points in ring k+1 or beyond are at distance >= k * cell from x
    if (best_d2 <= static_cast<double>(k) * cell_ * static_cast<double>(k) * cell_) break;
    if (k > kmax) break;
  }
}

double GridIndex::nearest_distance(std::span<const double> x) const {
  double d2;
  std::size_t i;
  nearest(x, d2, i);
  return std::sqrt(d2);
}

std::size_t GridIndex::nearest_index(std::span<const double> x) const {
  double d2;
  std::size_t i;
  nearest(x, d2, i);
  return i;
}

void GridIndex::gather_within(std::span<const double> x, double radius, std::vector<std::size_t>& out) const {
  if (static_cast<int>(x.size()) != ps_.dim) throw InputError("gather_within: point dimension mismatch");
  out.clear();
  const int d = ps_.dim;
  const double r2 = radius * radius;
  std::vector<std::int64_t> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d)), c(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    lo[static_cast<std::size_t>(j)] = std::max(
        static_cast<std::int64_t>(std::floor((x[static_cast<std::size_t>(j)] - radius - origin_[static_cast<std::size_t>(j)]) / cell_)),
        cells_lo_[static_cast<std::size_t>(j)]);
    hi[static_cast<std::size_t>(j)] = std::min(
        static_cast<std::int64_t>(std::floor((x[static_cast<std::size_t>(j)] + radius - origin_[static_cast<std::size_t>(j)]) / cell_)),
        cells_hi_[static_cast<std::size_t>(j)]);
  }
  std::function<void(int)> rec = [&](int axis) {
    if (axis == d) {
      auto it = buckets_.find(key_of(c));
      if (it == buckets_.end()) return;
      for (std::uint32_t idx : it->second) {
        if (squared_distance(x, ps_.point(idx)) <= r2) out.push_back(idx);
      }
      return;
    }
    for (std::int64_t v = lo[static_cast<std::size_t>(axis)]; v <= hi[static_cast<std::size_t>(axis)]; ++v) {
      c[static_cast<std::size_t>(axis)] = v;
      rec(axis + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
}

PointSet greedy_separated_subset(const PointSet& ps, double h) {
  if (ps.empty()) throw InputError("greedy_separated_subset: empty point set");
  if (!(h > 0)) throw InputError("greedy_separated_subset: h must be positive");

  std::vector<std::size_t> order(ps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto pa = ps.point(a), pb = ps.point(b);
    const bool lt = std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    const bool gt = std::lexicographical_compare(pb.begin(), pb.end(), pa.begin(), pa.end());
    if (!lt && !gt) return a < b;
    return lt;
  });

  // bucket the accepted points on cells of size h; conflicts live in the
  // 3^d neighborhood
  const int d = ps.dim;
  PointSet kept(d);
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  auto key_of = [&](const std::vector<std::int64_t>& cell) {
    std::uint64_t hsh = 0x2545f4914f6cdd1dULL;
    for (std::int64_t v : cell) {
      std::uint64_t s = hsh ^ static_cast<std::uint64_t>(v);
      hsh = splitmix64(s);
    }
    return hsh;
  };
  auto locate = [&](std::span<const double> x, std::vector<std::int64_t>& cell) {
    for (int j = 0; j < d; ++j) cell[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::floor(x[static_cast<std::size_t>(j)] / h));
  };

  std::vector<std::int64_t> nb(static_cast<std::size_t>(d));
  for (std::size_t oi : order) {
    const auto p = ps.point(oi);
    locate(p, c);
    bool blocked = false;
    std::function<void(int)> rec = [&](int axis) {
      if (blocked) return;
      if (axis == d) {
        auto it = buckets.find(key_of(nb));
        if (it == buckets.end()) return;
        for (std::uint32_t ki : it->second) {
          if (euclidean_distance(p, kept.point(ki)) < h) {
            blocked = true;
            return;
          }
        }
        return;
      }
      for (std::int64_t v = c[static_cast<std::size_t>(axis)] - 1; v <= c[static_cast<std::size_t>(axis)] + 1; ++v) {
        nb[static_cast<std::size_t>(axis)] = v;
        rec(axis + 1);
        if (blocked) return;
      }
    };
    rec(0);
    if (!blocked) {
      buckets[key_of(c)].push_back(static_cast<std::uint32_t>(kept.size()));
      kept.push_back(p);
    }
  }
  return kept;
}

SampleResult sample_uniform(const ConvexDomain& domain, std::uint64_t seed, std::size_t n) {
  if (n < 1) throw InputError("sample_uniform: n must be >= 1");
  Rng rng(seed);
  const int d = domain.dim();
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  SampleResult res;
  res.points.dim = d;
  res.points.coords.reserve(n * static_cast<std::size_t>(d));
  std::vector<double> x(static_cast<std::size_t>(d));
  std::size_t attempts = 0;
  std::size_t accepted = 0;
  const std::size_t attempt_floor = 10000000;
  while (accepted < n) {
    ++attempts;
    for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = rng.uniform(lo[static_cast<std::size_t>(j)], hi[static_cast<std::size_t>(j)]);
    if (domain.contains(x)) {
      res.points.push_back(x);
      ++accepted;
    } else if (attempts >= attempt_floor && static_cast<double>(accepted) < 1e-6 * static_cast<double>(attempts)) {
      throw NumericalError("sample_uniform: acceptance rate below 1e-6 after " + std::to_string(attempts) +
                           " attempts (degenerate domain/bounding box)");
    }
  }
  res.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(attempts);
  return res;
}

PointSet grid_points(const ConvexDomain& domain, int k) {
  if (k < 1) throw InputError("grid_points: k must be >= 1");
  const int d = domain.dim();
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  PointSet ps(d);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] +
                                       (idx[static_cast<std::size_t>(j)] + 0.5) *
                                           (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / k;
    }
    if (domain.contains(x)) ps.push_back(x);
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == k) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  if (ps.empty()) throw NumericalError("grid_points: no grid point lies in the domain");
  return ps;
}

PointSet grid_points_with_hole(const ConvexDomain& domain, int k, std::span<const double> hole_center,
                               double hole_radius) {
  const PointSet base = grid_points(domain, k);
  PointSet ps(base.dim);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto p = base.point(i);
    if (euclidean_distance(p, hole_center) >= hole_radius) ps.push_back(p);
  }
  if (ps.empty()) throw NumericalError("grid_points_with_hole: hole swallows every grid point");
  return ps;
}

}  // namespace scatterqual
