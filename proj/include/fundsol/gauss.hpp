#ifndef FUNDSOL_GAUSS_HPP
#define FUNDSOL_GAUSS_HPP

#include <functional>
#include <vector>

namespace fundsol {

/// Quadrature rule on an interval: nodes and matching weights.
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(double)>& f) const {
    double s = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// Gauss-Legendre rule with n points on [-1,1].
Rule1D gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a,b].
Rule1D gauss_legendre(int n, double a, double b);

/// Composite rule on [a,b] with panels geometrically graded toward the
/// endpoint `sing` (which must be a or b). Handles log and |.|^p endpoint
/// singularities to near machine precision.
Rule1D graded_toward(double a, double b, double sing, int panels = 14,
                     int order = 16, double ratio = 0.5);

/// Composite rule on [a,b] graded toward an interior point c from both sides.
Rule1D graded_interior(double a, double b, double c, int panels = 14,
                       int order = 16);

}  // namespace fundsol

#endif
