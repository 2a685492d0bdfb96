#pragma once

#include <optional>
#include <span>
#include <vector>

#include "scatterqual/geometry.hpp"
#include "scatterqual/point_set.hpp"

namespace scatterqual {

/// Cube B_inf(center, radius) in the good-cube covering.
struct GoodCube {
  std::vector<double> center;
  double radius = 0.0;
};

/// Ball inside the matching cube's half-cube, inside the domain and empty of
/// sampling points. Cubes where no ball could be certified at probe
/// resolution carry valid = false and are excluded from lower-bound use.
struct EmptyBall {
  std::vector<double> center;
  double radius = 0.0;
  bool valid = false;
};

struct GoodCover {
  std::vector<GoodCube> cubes;     // radii nonincreasing in construction order
  std::vector<EmptyBall> balls;    // parallel to cubes once attached
  double cube_constant = 0.25;     // c in the condition sup dist < c * rho
  int multiplicity_observed = 0;   // max cubes containing any probe point
};

struct CoverOptions {
  double cube_constant = 0.25;
  /// Probe spacing inside a cube of radius rho is probe_factor * rho.
  double probe_factor = 1.0 / 12.0;
  double radius_rel_tol = 1e-3;
  /// Geometric scan for the good radius starts at scan_floor * r.
  double scan_floor = 1e-3;
  int threads = 0;
};

struct LocalFill {
  double value = 0.0;
  bool empty_intersection = false;
};

/// Certified upper estimate of sup dist(.,P) over Omega intersect
/// B_inf(x, rho): probe-grid max plus probe_mesh * sqrt(d)/2. The center x
/// itself is probed when it lies in the domain.
LocalFill local_fill(const ConvexDomain& domain, const GridIndex& index, std::span<const double> x,
                     double rho, double probe_mesh);

/// Approximate infimum of { rho in (0, r) : local_fill(x, rho) < c rho }:
/// geometric scan (factor 2 upward from scan_floor * r) locates the first
/// satisfying scale, then bisection to relative tolerance radius_rel_tol.
/// Returns the smallest verified rho, or nullopt when no scale up to r
/// satisfies the condition ("globally bad point set").
std::optional<double> good_radius(const ConvexDomain& domain, const GridIndex& index,
                                  std::span<const double> x, const CoverOptions& opts = {});

/// Greedy cover over a finite candidate grid: repeatedly emit the cube of the
/// uncovered candidate with the largest good radius, radii clamped
/// nonincreasing. Every candidate ends up covered. Throws NumericalError
/// ("globally bad point set") when some candidate has no good radius.
GoodCover build_good_cover(const ConvexDomain& domain, const GridIndex& index, double candidate_mesh,
                           const CoverOptions& opts = {});

/// Completes the cover with one empty ball per cube: scans Q_i/4 for the
/// probe z_i maximizing dist(.,P), then places a ball of radius up to
/// c_theta * min(c r_i / 8, dist(z_i, P)) inside the domain via the cone
/// parameters. Asserts emptiness and pairwise disjointness of valid balls.
void attach_empty_balls(GoodCover& cover, const ConvexDomain& domain, const GridIndex& index,
                        const CoverOptions& opts = {});

}  // namespace scatterqual
