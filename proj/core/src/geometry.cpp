#include "scatterqual/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "scatterqual/csv.hpp"
#include "scatterqual/error.hpp"
#include "scatterqual/rng.hpp"
#include "scatterqual/version.hpp"

namespace scatterqual {

namespace {

constexpr double kFeasTol = 1e-9;

double norm2(std::span<const double> v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Gaussian elimination with partial pivoting for the small square systems in
/// vertex enumeration. Returns false when (numerically) singular.
bool solve_square(std::vector<double> a, std::vector<double> rhs, int n, std::vector<double>& out) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    }
    if (std::fabs(a[piv * n + col]) < 1e-12) return false;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(rhs[piv], rhs[col]);
    }
    const double inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] * inv;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      rhs[r] -= f * rhs[col];
    }
  }
  out.assign(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * out[c];
    out[r] = s / a[r * n + r];
  }
  return true;
}

bool feasible(const std::vector<Halfspace>& faces, std::span<const double> x, double scale) {
  for (const auto& f : faces) {
    if (dot(f.normal, x) > f.offset + kFeasTol * scale) return false;
  }
  return true;
}

/// Nonemptiness of a bounded polyhedron: it is nonempty iff it has a vertex.
bool polyhedron_nonempty(const std::vector<Halfspace>& faces, int dim) {
  return !enumerate_vertices(faces, dim).empty();
}

/// The recession cone { y : a_i . y <= 0 } is nontrivial iff it meets a face
/// of the l^inf unit cube; each face check is a bounded feasibility problem.
bool has_recession_direction(const std::vector<Halfspace>& faces, int dim) {
  for (int j = 0; j < dim; ++j) {
    for (double sign : {-1.0, 1.0}) {
      std::vector<Halfspace> sub;
      for (const auto& f : faces) {
        Halfspace g;
        g.offset = -sign * f.normal[static_cast<std::size_t>(j)];
        for (int k = 0; k < dim; ++k) {
          if (k == j) continue;
          g.normal.push_back(f.normal[static_cast<std::size_t>(k)]);
        }
        sub.push_back(std::move(g));
      }
      // box constraints |y_k| <= 1 on the remaining coordinates
      for (int k = 0; k < dim - 1; ++k) {
        Halfspace lo, hi;
        lo.normal.assign(static_cast<std::size_t>(dim - 1), 0.0);
        hi.normal.assign(static_cast<std::size_t>(dim - 1), 0.0);
        lo.normal[static_cast<std::size_t>(k)] = -1.0;
        lo.offset = 1.0;
        hi.normal[static_cast<std::size_t>(k)] = 1.0;
        hi.offset = 1.0;
        sub.push_back(std::move(lo));
        sub.push_back(std::move(hi));
      }
      if (dim == 1) {
        // zero-dimensional subproblem: the fixed direction itself
        bool ok = true;
        for (const auto& f : faces) {
          if (sign * f.normal[0] > kFeasTol) ok = false;
        }
        if (ok) return true;
      } else if (polyhedron_nonempty(sub, dim - 1)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

double linf_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double unit_ball_volume(int dim) {
  return std::pow(std::acos(-1.0), 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

std::vector<std::vector<double>> enumerate_vertices(const std::vector<Halfspace>& faces, int dim) {
  std::vector<std::vector<double>> verts;
  const int m = static_cast<int>(faces.size());
  if (m < dim) return verts;

  double scale = 1.0;
  for (const auto& f : faces) scale = std::max(scale, std::fabs(f.offset));

  std::vector<int> pick(static_cast<std::size_t>(dim));
  std::vector<double> a(static_cast<std::size_t>(dim * dim));
  std::vector<double> rhs(static_cast<std::size_t>(dim));
  std::vector<double> x;

  // iterate over all dim-subsets of constraints
  for (int i = 0; i < dim; ++i) pick[static_cast<std::size_t>(i)] = i;
  for (;;) {
    for (int r = 0; r < dim; ++r) {
      const auto& f = faces[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
      for (int c = 0; c < dim; ++c) a[static_cast<std::size_t>(r * dim + c)] = f.normal[static_cast<std::size_t>(c)];
      rhs[static_cast<std::size_t>(r)] = f.offset;
    }
    if (solve_square(a, rhs, dim, x) && feasible(faces, x, scale)) {
      bool dup = false;
      for (const auto& v : verts) {
        if (euclidean_distance(v, x) < 1e-8 * scale) {
          dup = true;
          break;
        }
      }
      if (!dup) verts.push_back(x);
    }
    // next combination
    int i = dim - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - dim + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < dim; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return verts;
}

ConvexDomain ConvexDomain::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size()) throw InputError("box: inconsistent corner dimensions");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw InputError("box: empty interior (lo >= hi)");
    if (!std::isfinite(lo[i]) || !std::isfinite(hi[i])) throw InputError("box: non-finite corner");
  }
  ConvexDomain d(DomainKind::Box, static_cast<int>(lo.size()));
  d.bbox_lo_ = lo;
  d.bbox_hi_ = hi;
  d.volume_ = 1.0;
  d.diameter_ = 0.0;
  d.inradius_ = std::numeric_limits<double>::infinity();
  d.incenter_.resize(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    const double side = hi[i] - lo[i];
    d.volume_ *= side;
    d.diameter_ += side * side;
    d.inradius_ = std::min(d.inradius_, 0.5 * side);
    d.incenter_[i] = 0.5 * (lo[i] + hi[i]);
  }
  d.diameter_ = std::sqrt(d.diameter_);
  return d;
}

ConvexDomain ConvexDomain::cube(double lo, double hi, int dim) {
  if (dim < 1) throw InputError("cube: dimension must be positive");
  return box(std::vector<double>(static_cast<std::size_t>(dim), lo),
             std::vector<double>(static_cast<std::size_t>(dim), hi));
}

ConvexDomain ConvexDomain::ball(std::vector<double> center, double radius) {
  if (center.empty()) throw InputError("ball: empty center");
  if (!(radius > 0) || !std::isfinite(radius)) throw InputError("ball: radius must be positive");
  ConvexDomain d(DomainKind::Ball, static_cast<int>(center.size()));
  d.ball_center_ = center;
  d.ball_radius_ = radius;
  d.bbox_lo_.resize(center.size());
  d.bbox_hi_.resize(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    d.bbox_lo_[i] = center[i] - radius;
    d.bbox_hi_[i] = center[i] + radius;
  }
  d.volume_ = unit_ball_volume(d.dim_) * std::pow(radius, d.dim_);
  d.diameter_ = 2 * radius;
  d.inradius_ = radius;
  d.incenter_ = center;
  return d;
}

ConvexDomain ConvexDomain::polytope(std::vector<Halfspace> faces, std::vector<double> interior_point) {
  if (faces.empty()) throw InputError("polytope: no half-spaces");
  const std::size_t dim = interior_point.size();
  if (dim == 0) throw InputError("polytope: empty interior point");
  for (const auto& f : faces) {
    if (f.normal.size() != dim) throw InputError("polytope: half-space dimension mismatch");
    if (norm2(f.normal) < 1e-14) throw InputError("polytope: zero normal");
  }
  ConvexDomain d(DomainKind::Polytope, static_cast<int>(dim));
  d.faces_ = std::move(faces);
  d.interior_point_ = std::move(interior_point);
  d.finish_polytope();
  return d;
}

void ConvexDomain::finish_polytope() {
  const int dim = dim_;

  double scale = 1.0;
  for (const auto& f : faces_) scale = std::max(scale, std::fabs(f.offset));
  for (const auto& f : faces_) {
    const double slack = f.offset - dot(f.normal, interior_point_);
    if (slack <= kFeasTol * scale * norm2(f.normal)) {
      throw InputError("polytope: interior point is not strictly interior");
    }
  }

  if (has_recession_direction(faces_, dim)) throw InputError("polytope: unbounded constraint set");

  vertices_ = enumerate_vertices(faces_, dim);
  if (vertices_.empty()) throw InputError("polytope: no vertices found (empty or degenerate)");

  bbox_lo_.assign(static_cast<std::size_t>(dim), std::numeric_limits<double>::infinity());
  bbox_hi_.assign(static_cast<std::size_t>(dim), -std::numeric_limits<double>::infinity());
  for (const auto& v : vertices_) {
    for (int i = 0; i < dim; ++i) {
      bbox_lo_[static_cast<std::size_t>(i)] = std::min(bbox_lo_[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
      bbox_hi_[static_cast<std::size_t>(i)] = std::max(bbox_hi_[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
    }
  }

  // diameter of a polytope is attained at a vertex pair
  diameter_ = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      diameter_ = std::max(diameter_, euclidean_distance(vertices_[i], vertices_[j]));
    }
  }

  // Chebyshev center: maximize t subject to a_i.x + |a_i| t <= b_i, solved by
  // vertex enumeration in (x, t) with bounding-box constraints added.
  {
    std::vector<Halfspace> lifted;
    for (const auto& f : faces_) {
      Halfspace g;
      g.normal = f.normal;
      g.normal.push_back(norm2(f.normal));
      g.offset = f.offset;
      lifted.push_back(std::move(g));
    }
    const double diag = diameter_;
    for (int j = 0; j < dim; ++j) {
      Halfspace lo, hi;
      lo.normal.assign(static_cast<std::size_t>(dim + 1), 0.0);
      hi.normal.assign(static_cast<std::size_t>(dim + 1), 0.0);
      lo.normal[static_cast<std::size_t>(j)] = -1.0;
      lo.offset = -bbox_lo_[static_cast<std::size_t>(j)];
      hi.normal[static_cast<std::size_t>(j)] = 1.0;
      hi.offset = bbox_hi_[static_cast<std::size_t>(j)];
      lifted.push_back(std::move(lo));
      lifted.push_back(std::move(hi));
    }
    Halfspace tlo, thi;
    tlo.normal.assign(static_cast<std::size_t>(dim + 1), 0.0);
    tlo.normal[static_cast<std::size_t>(dim)] = -1.0;
    tlo.offset = 0.0;
    thi.normal.assign(static_cast<std::size_t>(dim + 1), 0.0);
    thi.normal[static_cast<std::size_t>(dim)] = 1.0;
    thi.offset = diag;
    lifted.push_back(std::move(tlo));
    lifted.push_back(std::move(thi));

    auto lifted_verts = enumerate_vertices(lifted, dim + 1);
    double best_t = 0.0;
    std::vector<double> best_x(interior_point_);
    for (const auto& v : lifted_verts) {
      const double t = v[static_cast<std::size_t>(dim)];
      if (t > best_t) {
        best_t = t;
        best_x.assign(v.begin(), v.begin() + dim);
      }
    }
    if (best_t <= 0) throw InputError("polytope: empty interior");
    inradius_ = best_t;
    incenter_ = best_x;
  }

  // Monte Carlo volume over the bounding box. The stream seed is a hash of
  // the constraint data so equal polytopes report equal volumes.
  {
    const std::size_t samples = 400000;
    double bbox_vol = 1.0;
    for (int j = 0; j < dim; ++j) bbox_vol *= bbox_hi_[static_cast<std::size_t>(j)] - bbox_lo_[static_cast<std::size_t>(j)];
    std::string repr;
    for (const auto& f : faces_) {
      for (double v : f.normal) repr += format_number(v) + ",";
      repr += format_number(f.offset) + ";";
    }
    Rng rng(fnv1a64(repr));
    std::vector<double> x(static_cast<std::size_t>(dim));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      for (int j = 0; j < dim; ++j) {
        x[static_cast<std::size_t>(j)] = rng.uniform(bbox_lo_[static_cast<std::size_t>(j)], bbox_hi_[static_cast<std::size_t>(j)]);
      }
      if (contains(x)) ++hits;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    volume_ = bbox_vol * p;
    volume_std_error_ = bbox_vol * std::sqrt(std::max(0.0, p * (1 - p) / static_cast<double>(samples)));
  }
}

bool ConvexDomain::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) throw InputError("contains: point dimension mismatch");
  switch (kind_) {
    case DomainKind::Box:
      for (int i = 0; i < dim_; ++i) {
        if (!(x[static_cast<std::size_t>(i)] > bbox_lo_[static_cast<std::size_t>(i)] &&
              x[static_cast<std::size_t>(i)] < bbox_hi_[static_cast<std::size_t>(i)])) {
          return false;
        }
      }
      return true;
    case DomainKind::Ball:
      return squared_distance(x, ball_center_) < ball_radius_ * ball_radius_;
    case DomainKind::Polytope:
      for (const auto& f : faces_) {
        if (!(dot(f.normal, x) < f.offset)) return false;
      }
      return true;
  }
  return false;
}

ConeParameters ConvexDomain::cone_parameters() const {
  ConeParameters cp;
  cp.inradius = std::min(1.0, inradius_);
  cp.angle = 2.0 * std::asin(cp.inradius / (2.0 * diameter_));
  const double s = std::sin(cp.angle);
  cp.ball_factor = s / (1.0 + s);
  return cp;
}

double ConvexDomain::boundary_clearance(std::span<const double> x) const {
  double c = std::numeric_limits<double>::infinity();
  switch (kind_) {
    case DomainKind::Box:
      for (int i = 0; i < dim_; ++i) {
        c = std::min(c, x[static_cast<std::size_t>(i)] - bbox_lo_[static_cast<std::size_t>(i)]);
        c = std::min(c, bbox_hi_[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]);
      }
      break;
    case DomainKind::Ball:
      c = ball_radius_ - euclidean_distance(x, ball_center_);
      break;
    case DomainKind::Polytope:
      for (const auto& f : faces_) {
        double nn = 0;
        for (double v : f.normal) nn += v * v;
        c = std::min(c, (f.offset - dot(f.normal, x)) / std::sqrt(nn));
      }
      break;
  }
  return std::max(0.0, c);
}

CellRelation ConvexDomain::classify_cell(std::span<const double> lo, std::span<const double> hi) const {
  switch (kind_) {
    case DomainKind::Box: {
      bool inside = true;
      for (int i = 0; i < dim_; ++i) {
        if (lo[static_cast<std::size_t>(i)] >= bbox_hi_[static_cast<std::size_t>(i)] ||
            hi[static_cast<std::size_t>(i)] <= bbox_lo_[static_cast<std::size_t>(i)]) {
          return CellRelation::Outside;
        }
        if (lo[static_cast<std::size_t>(i)] < bbox_lo_[static_cast<std::size_t>(i)] ||
            hi[static_cast<std::size_t>(i)] > bbox_hi_[static_cast<std::size_t>(i)]) {
          inside = false;
        }
      }
      return inside ? CellRelation::Inside : CellRelation::Boundary;
    }
    case DomainKind::Ball: {
      double dmin = 0, dmax = 0;
      for (int i = 0; i < dim_; ++i) {
        const double c = ball_center_[static_cast<std::size_t>(i)];
        const double l = lo[static_cast<std::size_t>(i)], h = hi[static_cast<std::size_t>(i)];
        const double near = std::clamp(c, l, h) - c;
        const double far = std::max(std::fabs(l - c), std::fabs(h - c));
        dmin += near * near;
        dmax += far * far;
      }
      const double r2 = ball_radius_ * ball_radius_;
      if (dmin >= r2) return CellRelation::Outside;
      if (dmax <= r2) return CellRelation::Inside;
      return CellRelation::Boundary;
    }
    case DomainKind::Polytope: {
      bool inside = true;
      for (const auto& f : faces_) {
        double mn = 0, mx = 0;
        for (int i = 0; i < dim_; ++i) {
          const double a = f.normal[static_cast<std::size_t>(i)];
          const double l = lo[static_cast<std::size_t>(i)], h = hi[static_cast<std::size_t>(i)];
          mn += std::min(a * l, a * h);
          mx += std::max(a * l, a * h);
        }
        if (mn >= f.offset) return CellRelation::Outside;
        if (mx > f.offset) inside = false;
      }
      return inside ? CellRelation::Inside : CellRelation::Boundary;
    }
  }
  return CellRelation::Outside;
}

std::string ConvexDomain::describe() const {
  std::ostringstream ss;
  switch (kind_) {
    case DomainKind::Box: {
      bool uniform = true;
      for (int i = 1; i < dim_; ++i) {
        if (bbox_lo_[static_cast<std::size_t>(i)] != bbox_lo_[0] || bbox_hi_[static_cast<std::size_t>(i)] != bbox_hi_[0]) {
          uniform = false;
        }
      }
      if (uniform) {
        ss << "box(" << format_number(bbox_lo_[0]) << "," << format_number(bbox_hi_[0]) << ")^" << dim_;
      } else {
        ss << "box(";
        for (int i = 0; i < dim_; ++i) {
          if (i) ss << ";";
          ss << format_number(bbox_lo_[static_cast<std::size_t>(i)]) << "," << format_number(bbox_hi_[static_cast<std::size_t>(i)]);
        }
        ss << ")";
      }
      break;
    }
    case DomainKind::Ball:
      ss << "ball(";
      for (int i = 0; i < dim_; ++i) {
        if (i) ss << ",";
        ss << format_number(ball_center_[static_cast<std::size_t>(i)]);
      }
      ss << ";" << format_number(ball_radius_) << ")";
      break;
    case DomainKind::Polytope:
      ss << "poly(";
      for (std::size_t k = 0; k < faces_.size(); ++k) {
        if (k) ss << "|";
        for (int i = 0; i < dim_; ++i) ss << format_number(faces_[k].normal[static_cast<std::size_t>(i)]) << ",";
        ss << format_number(faces_[k].offset);
      }
      ss << ";interior=";
      for (int i = 0; i < dim_; ++i) {
        if (i) ss << ",";
        ss << format_number(interior_point_[static_cast<std::size_t>(i)]);
      }
      ss << ")";
      break;
  }
  return ss.str();
}

}  // namespace scatterqual
