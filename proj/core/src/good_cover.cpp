#include "scatterqual/good_cover.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "scatterqual/error.hpp"
#include "scatterqual/parallel.hpp"

namespace scatterqual {

namespace {

/// Probe grid over B_inf(x, rho): per-axis midpoints at spacing <= probe_mesh.
void for_each_probe(std::span<const double> x, double rho, double probe_mesh,
                    const std::function<void(std::span<const double>)>& fn) {
  const int d = static_cast<int>(x.size());
  const int per_axis = std::max(1, static_cast<int>(std::ceil(2.0 * rho / probe_mesh)));
  const double step = 2.0 * rho / per_axis;
  std::vector<double> p(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      p[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)] - rho + (idx[static_cast<std::size_t>(j)] + 0.5) * step;
    }
    fn(p);
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == per_axis) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
}

std::vector<double> normalized_direction(std::span<const double> from, std::span<const double> to) {
  std::vector<double> u(from.size(), 0.0);
  double n2 = 0;
  for (std::size_t j = 0; j < from.size(); ++j) {
    u[j] = to[j] - from[j];
    n2 += u[j] * u[j];
  }
  const double n = std::sqrt(n2);
  if (n < 1e-14) {
    u.assign(from.size(), 0.0);
    u[0] = 1.0;  // apex coincides with the incenter; any direction works
    return u;
  }
  for (auto& v : u) v /= n;
  return u;
}

}  // namespace

LocalFill local_fill(const ConvexDomain& domain, const GridIndex& index, std::span<const double> x,
                     double rho, double probe_mesh) {
  if (!(rho > 0) || !(probe_mesh > 0)) throw InputError("local_fill: rho and probe_mesh must be positive");
  const int d = domain.dim();
  LocalFill out;
  double max_dist = -1.0;
  for_each_probe(x, rho, probe_mesh, [&](std::span<const double> p) {
    if (!domain.contains(p)) return;
    max_dist = std::max(max_dist, index.nearest_distance(p));
  });
  if (domain.contains(x)) max_dist = std::max(max_dist, index.nearest_distance(x));
  if (max_dist < 0) {
    out.value = 0.0;
    out.empty_intersection = true;
    return out;
  }
  out.value = max_dist + 0.5 * probe_mesh * std::sqrt(static_cast<double>(d));
  return out;
}

std::optional<double> good_radius(const ConvexDomain& domain, const GridIndex& index,
                                  std::span<const double> x, const CoverOptions& opts) {
  if (!(opts.cube_constant > 0 && opts.cube_constant < 1)) {
    throw InputError("good_radius: cube constant must lie in (0,1)");
  }
  const double r = domain.cone_parameters().inradius;
  const double c = opts.cube_constant;

  auto satisfied = [&](double rho) {
    const LocalFill f = local_fill(domain, index, x, rho, opts.probe_factor * rho);
    return !f.empty_intersection && f.value < c * rho;
  };

  // geometric scan from below; the condition set need not be an interval,
  // so we look for the first satisfying scale
  double good = -1.0;
  double below = 0.0;
  double rho = opts.scan_floor * r;
  const double top = r * (1.0 - 1e-9);
  for (;;) {
    const double probe = std::min(rho, top);
    if (satisfied(probe)) {
      good = probe;
      break;
    }
    below = probe;
    if (probe >= top) break;
    rho *= 2.0;
  }
  if (good < 0) return std::nullopt;

  while (good - below > opts.radius_rel_tol * good && below > 0) {
    const double mid = 0.5 * (good + below);
    if (satisfied(mid)) {
      good = mid;
    } else {
      below = mid;
    }
  }
  return good;
}

namespace {

/// Midpoint candidate grid with per-axis spacing <= mesh, restricted to the
/// domain.
PointSet candidate_grid(const ConvexDomain& domain, double mesh) {
  if (!(mesh > 0)) throw InputError("build_good_cover: candidate mesh must be positive");
  const int d = domain.dim();
  const auto& lo = domain.lower();
  const auto& hi = domain.upper();
  std::vector<int> counts(static_cast<std::size_t>(d));
  std::vector<double> steps(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    counts[static_cast<std::size_t>(j)] =
        std::max(1, static_cast<int>(std::ceil((hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / mesh - 1e-12)));
    steps[static_cast<std::size_t>(j)] =
        (hi[static_cast<std::size_t>(j)] - lo[static_cast<std::size_t>(j)]) / counts[static_cast<std::size_t>(j)];
  }
  PointSet ps(d);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  for (;;) {
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + (idx[static_cast<std::size_t>(j)] + 0.5) * steps[static_cast<std::size_t>(j)];
    }
    if (domain.contains(x)) ps.push_back(x);
    int axis = d - 1;
    while (axis >= 0 && ++idx[static_cast<std::size_t>(axis)] == counts[static_cast<std::size_t>(axis)]) {
      idx[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return ps;
}

}  // namespace

GoodCover build_good_cover(const ConvexDomain& domain, const GridIndex& index, double candidate_mesh,
                           const CoverOptions& opts) {
  const PointSet candidates = candidate_grid(domain, candidate_mesh);
  const std::size_t m = candidates.size();
  if (m == 0) throw InputError("build_good_cover: empty candidate grid");

  std::vector<double> radii(m, -1.0);
  parallel_for(m, opts.threads, [&](std::size_t i) {
    const auto rho = good_radius(domain, index, candidates.point(i), opts);
    if (rho) radii[i] = *rho;
  });
  for (std::size_t i = 0; i < m; ++i) {
    if (radii[i] < 0) {
      throw NumericalError("build_good_cover: globally bad point set (no good radius at a candidate)");
    }
  }

  GoodCover cover;
  cover.cube_constant = opts.cube_constant;

  std::vector<char> covered(m, 0);
  std::size_t remaining = m;
  double prev_radius = std::numeric_limits<double>::infinity();
  while (remaining > 0) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!covered[i] && (best == m || radii[i] > radii[best])) best = i;
    }
    GoodCube cube;
    const auto y = candidates.point(best);
    cube.center.assign(y.begin(), y.end());
    cube.radius = std::min(radii[best], prev_radius);
    prev_radius = cube.radius;
    cover.cubes.push_back(cube);
    for (std::size_t i = 0; i < m; ++i) {
      if (!covered[i] && linf_distance(candidates.point(i), cube.center) <= cube.radius) {
        covered[i] = 1;
        --remaining;
      }
    }
  }

  int multiplicity = 0;
  for (std::size_t i = 0; i < m; ++i) {
    int count = 0;
    for (const auto& cube : cover.cubes) {
      if (linf_distance(candidates.point(i), cube.center) <= cube.radius) ++count;
    }
    multiplicity = std::max(multiplicity, count);
  }
  cover.multiplicity_observed = multiplicity;
  return cover;
}

void attach_empty_balls(GoodCover& cover, const ConvexDomain& domain, const GridIndex& index,
                        const CoverOptions& opts) {
  const ConeParameters cone = domain.cone_parameters();
  const double sin_theta = std::sin(cone.angle);
  const double c = cover.cube_constant;

  cover.balls.assign(cover.cubes.size(), EmptyBall{});
  parallel_for(cover.cubes.size(), opts.threads, [&](std::size_t i) {
    const GoodCube& cube = cover.cubes[i];
    const double quarter = 0.25 * cube.radius;

    // probe argmax of dist over Q_i/4
    double best_dist = -1.0;
    std::vector<double> z;
    for_each_probe(cube.center, quarter, opts.probe_factor * 2.0 * quarter, [&](std::span<const double> p) {
      if (!domain.contains(p)) return;
      const double dist = index.nearest_distance(p);
      if (dist > best_dist) {
        best_dist = dist;
        z.assign(p.begin(), p.end());
      }
    });
    if (domain.contains(cube.center)) {
      const double dist = index.nearest_distance(cube.center);
      if (dist > best_dist) {
        best_dist = dist;
        z.assign(cube.center.begin(), cube.center.end());
      }
    }
    if (best_dist <= 0) return;  // flagged invalid

    const double rho = std::min(c * cube.radius / 8.0, best_dist);
    EmptyBall ball;
    if (domain.boundary_clearance(z) >= cone.ball_factor * rho) {
      ball.center = z;
    } else {
      // slide along the cone axis toward the incenter
      const auto u = normalized_direction(z, domain.incenter());
      ball.center = z;
      const double shift = rho / (1.0 + sin_theta);
      for (std::size_t j = 0; j < ball.center.size(); ++j) ball.center[j] += shift * u[j];
    }
    ball.radius = std::min({cone.ball_factor * rho, domain.boundary_clearance(ball.center),
                            index.nearest_distance(ball.center)});
    if (ball.radius <= 0) return;
    ball.valid = true;
    cover.balls[i] = ball;
  });

  // construction guarantees: balls live in open half-cubes, hence disjoint
  for (std::size_t i = 0; i < cover.balls.size(); ++i) {
    if (!cover.balls[i].valid) continue;
    if (linf_distance(cover.balls[i].center, cover.cubes[i].center) + cover.balls[i].radius >
        0.5 * cover.cubes[i].radius + 1e-12) {
      throw NumericalError("attach_empty_balls: ball escapes its half-cube");
    }
    for (std::size_t j = i + 1; j < cover.balls.size(); ++j) {
      if (!cover.balls[j].valid) continue;
      const double dist = euclidean_distance(cover.balls[i].center, cover.balls[j].center);
      if (dist <= cover.balls[i].radius + cover.balls[j].radius) {
        throw NumericalError("attach_empty_balls: balls overlap");
      }
    }
  }
}

}  // namespace scatterqual
