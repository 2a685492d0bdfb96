#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "scatterqual/geometry.hpp"

namespace scatterqual {

/// Finite point configuration, row-major coordinate storage.
struct PointSet {
  int dim = 0;
  std::vector<double> coords;

  PointSet() = default;
  explicit PointSet(int d) : dim(d) {}

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<std::size_t>(dim); }
  bool empty() const { return coords.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }

  void push_back(std::span<const double> p);

  /// Exact coordinate duplicates (permitted in queries, flagged for callers
  /// that require distinct points).
  bool has_duplicates() const;
};

PointSet read_points_csv(const std::string& path, bool header = false);
void write_points_csv(const std::string& path, const PointSet& ps, bool header = false);

/// Uniform-bucket spatial index over a point set with exact nearest-distance
/// queries via expanding-ring search. Owns a copy of the points; queries are
/// read-only and safe to issue concurrently.
class GridIndex {
 public:
  /// cell_size = 0 picks bounding-box diameter / ceil(n^{1/d}).
  explicit GridIndex(PointSet ps, double cell_size = 0.0);

  const PointSet& points() const { return ps_; }
  double cell_size() const { return cell_; }

  /// Exact Euclidean distance to the nearest point.
  double nearest_distance(std::span<const double> x) const;
  std::size_t nearest_index(std::span<const double> x) const;

  /// Indices (ascending) of all points with ||p - x|| <= radius.
  void gather_within(std::span<const double> x, double radius, std::vector<std::size_t>& out) const;

 private:
  void locate(std::span<const double> x, std::vector<std::int64_t>& cell) const;
  std::uint64_t key_of(const std::vector<std::int64_t>& cell) const;
  void nearest(std::span<const double> x, double& best_d2, std::size_t& best_i) const;

  PointSet ps_;
  double cell_ = 1.0;
  std::vector<double> origin_;
  std::vector<std::int64_t> cells_lo_, cells_hi_;  // occupied cell index range
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets_;
};

/// Greedy separated subset: scans P in ascending lexicographic order and
/// keeps a point iff it is at distance >= h from everything kept so far.
/// The result X has pairwise separation >= h and covers P within h.
PointSet greedy_separated_subset(const PointSet& ps, double h);

struct SampleResult {
  PointSet points;
  double acceptance_rate = 1.0;
};

/// n i.i.d. uniform points by rejection from the bounding box; deterministic
/// given the seed. Fails with a diagnostic when the acceptance rate falls
/// below 1e-6.
SampleResult sample_uniform(const ConvexDomain& domain, std::uint64_t seed, std::size_t n);

/// k^d cell-center grid scaled to the domain bounding box (points outside the
/// domain are dropped, which only matters for non-box domains).
PointSet grid_points(const ConvexDomain& domain, int k);

/// Grid points minus an open ball (the "largest hole" construction).
PointSet grid_points_with_hole(const ConvexDomain& domain, int k, std::span<const double> hole_center,
                               double hole_radius);

}  // namespace scatterqual
