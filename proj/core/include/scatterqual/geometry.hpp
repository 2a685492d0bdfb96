#pragma once

#include <span>
#include <string>
#include <vector>

namespace scatterqual {

/// Closed half-space { x : <normal, x> <= offset }.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

/// Interior cone condition parameters of a convex domain:
///   theta = 2 asin(r / (2 diam)),  c_theta = sin(theta) / (1 + sin(theta)),
/// with r the inradius clamped to <= 1.
struct ConeParameters {
  double inradius = 0.0;
  double angle = 0.0;        // theta, in (0, pi/2)
  double ball_factor = 0.0;  // c_theta, in (0, 1/2)
};

enum class DomainKind { Box, Ball, Polytope };

/// Certified relation of an axis-aligned cell to the domain (up to sets of
/// measure zero; used by quadrature bracketing).
enum class CellRelation { Outside, Boundary, Inside };

/// A bounded convex domain: axis box, euclidean ball, or half-space polytope.
/// Membership is strict (the domain is open). Immutable after construction
/// and safe to share across threads.
class ConvexDomain {
 public:
  static ConvexDomain box(std::vector<double> lo, std::vector<double> hi);
  static ConvexDomain cube(double lo, double hi, int dim);
  static ConvexDomain ball(std::vector<double> center, double radius);
  /// `interior_point` must satisfy every constraint strictly; boundedness is
  /// verified via the recession cone of the constraint set.
  static ConvexDomain polytope(std::vector<Halfspace> faces, std::vector<double> interior_point);

  ConvexDomain() : ConvexDomain(cube(0.0, 1.0, 1)) {}

  int dim() const { return dim_; }
  DomainKind kind() const { return kind_; }

  bool contains(std::span<const double> x) const;

  /// Exact for boxes and balls; Monte Carlo over the bounding box for
  /// polytopes (deterministic internal stream, standard error reported).
  double volume() const { return volume_; }
  double volume_std_error() const { return volume_std_error_; }

  const std::vector<double>& lower() const { return bbox_lo_; }
  const std::vector<double>& upper() const { return bbox_hi_; }

  double diameter() const { return diameter_; }
  double inradius() const { return inradius_; }
  /// Center of an inscribed ball of radius inradius() (Chebyshev center for
  /// polytopes).
  const std::vector<double>& incenter() const { return incenter_; }

  ConeParameters cone_parameters() const;

  /// Distance from x to the complement of the domain; 0 outside.
  double boundary_clearance(std::span<const double> x) const;

  CellRelation classify_cell(std::span<const double> lo, std::span<const double> hi) const;

  /// Polytope accessors.
  const std::vector<Halfspace>& faces() const { return faces_; }
  const std::vector<std::vector<double>>& vertices() const { return vertices_; }

  /// Ball accessors.
  const std::vector<double>& ball_center() const { return ball_center_; }
  double ball_radius() const { return ball_radius_; }

  /// Round-trippable spec string, e.g. "box(0,1)^2" or "ball(0,0;1)".
  std::string describe() const;

 private:
  ConvexDomain(DomainKind kind, int dim) : kind_(kind), dim_(dim) {}
  void finish_polytope();

  DomainKind kind_;
  int dim_;

  std::vector<double> bbox_lo_, bbox_hi_;
  std::vector<double> ball_center_;
  double ball_radius_ = 0.0;
  std::vector<Halfspace> faces_;
  std::vector<double> interior_point_;
  std::vector<std::vector<double>> vertices_;

  double volume_ = 0.0;
  double volume_std_error_ = 0.0;
  double diameter_ = 0.0;
  double inradius_ = 0.0;
  std::vector<double> incenter_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);
double linf_distance(std::span<const double> a, std::span<const double> b);

/// Unit-ball volume pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int dim);

/// Vertices of the (assumed bounded) polyhedron { x : a_i . x <= b_i }.
/// Exact for the small systems used here: enumerates d-subsets of constraints.
std::vector<std::vector<double>> enumerate_vertices(const std::vector<Halfspace>& faces, int dim);

}  // namespace scatterqual
