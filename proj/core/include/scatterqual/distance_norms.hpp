#pragma once

#include <limits>
#include <span>
#include <string>

#include "scatterqual/geometry.hpp"
#include "scatterqual/point_set.hpp"

namespace scatterqual {

enum class NormMethod { GridCertified, MonteCarlo, Exact1d, GridTwoMesh };

std::string norm_method_name(NormMethod m);

/// A norm value with a bracket. For grid-certified estimates the bracket is
/// rigorous, derived from dist(.,P) being 1-Lipschitz plus boundary-cell
/// volume accounting; for two-mesh estimates it is a refinement diagnostic.
struct NormEstimate {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::GridCertified;
  double gamma = 0.0;  // exponent; infinity() marks the covering radius
};

inline constexpr double kGammaInf = std::numeric_limits<double>::infinity();

/// ( integral over Omega of dist(x,P)^gamma dx )^{1/gamma} by midpoint-grid
/// quadrature over cells of the given mesh whose centers lie in Omega.
/// value uses exactly those cells; [lower, upper] is certified:
///   lower integrates max(0, dist(c)-delta)^gamma over cells proven inside,
///   upper integrates (dist(c)+delta)^gamma over every cell that may touch
///   Omega, with delta = mesh * sqrt(d) / 2.
/// gamma = infinity is routed to covering_radius.
NormEstimate lgamma_norm(const ConvexDomain& domain, const GridIndex& index, double gamma, double mesh,
                         int threads = 0);

/// sup over Omega of dist(.,P): lower = max over in-domain cell centers,
/// upper = lower + mesh * sqrt(d)/2 (Lipschitz certificate over the sampled
/// cells), value = bracket midpoint.
NormEstimate covering_radius(const ConvexDomain& domain, const GridIndex& index, double mesh,
                             int threads = 0);

/// Exact 1D oracle on the interval (a, b): sorted gap contributions
/// g^{gamma+1}/(gamma+1) at the boundary and 2 (g/2)^{gamma+1}/(gamma+1)
/// inside, all to the power 1/gamma.
double lgamma_norm_1d_exact(double a, double b, const PointSet& ps, double gamma);

/// Covering radius on an interval, exact from sorted gaps.
double covering_radius_1d_exact(double a, double b, const PointSet& ps);

}  // namespace scatterqual
