#ifndef FUNDSOL_BOUNDARY_HPP
#define FUNDSOL_BOUNDARY_HPP

#include <string>
#include <vector>

#include "fundsol/operator_coefficients.hpp"

namespace fundsol {

/// Discretized closed boundary (curve in 2D, surface in 3D) with nodes,
/// outward unit normals, and quadrature weights for the Nystrom method.
struct ParamBoundary {
  int n = 2;
  std::string spec;
  int N = 0;  ///< resolution parameter (node count on curves)
  std::vector<double> params;  ///< parameter value(s) per node
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> normals;
  std::vector<double> weights;
  double h_grid = 0;       ///< max spacing between neighboring nodes
  double circumradius = 0;  ///< max |point|

  std::size_t size() const { return points.size(); }
  /// Same shape rebuilt with `factor` times the resolution.
  ParamBoundary refined(int factor) const;
};

/// Parse a boundary spec and discretize it with resolution N.
/// Curves (n = 2): "circle", "circle(r)", "ellipse(a,b)", "star(eps,m)"
/// with r(t) = 1 + eps cos(m t). Surfaces (n = 3): "sphere", "sphere(r)",
/// "ellipsoid(a,b,c)".
ParamBoundary make_boundary(const std::string& spec, int N);

/// Density values at the boundary nodes, in node order. When the density
/// came from an analytic expression, `field` carries it so refined
/// boundaries can be resampled exactly; otherwise refinement falls back to
/// trigonometric interpolation (curves only).
struct DensitySamples {
  std::vector<double> values;
  ScalarField field;
};

/// Parse an arithmetic expression in the coordinates (x, y, z or x1, x2, x3)
/// with + - * / ^, parentheses, and sin/cos/exp/log/sqrt/abs.
ScalarField parse_expression(const std::string& expr, int n);

DensitySamples sample_density(const ScalarField& f, const ParamBoundary& b);
DensitySamples sample_density(const std::string& expr, const ParamBoundary& b);

}  // namespace fundsol

#endif
