#include "fundsol/gauss.hpp"

#include <cmath>
#include <stdexcept>

namespace fundsol {

Rule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on Legendre polynomials, symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D base = gauss_legendre(n);
  Rule1D r;
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  r.nodes.reserve(n);
  r.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(mid + half * base.nodes[i]);
    r.weights.push_back(half * base.weights[i]);
  }
  return r;
}

Rule1D graded_toward(double a, double b, double sing, int panels, int order,
                     double ratio) {
  bool at_left = std::abs(sing - a) <= std::abs(sing - b);
  double len = b - a;
  Rule1D out;
  // Panel breakpoints: geometric shrink toward the singular endpoint.
  std::vector<double> brk(panels + 1);
  double t = 1.0;
  for (int i = 0; i <= panels; ++i) {
    brk[i] = (i == panels) ? 0.0 : t;
    t *= ratio;
  }
  Rule1D base = gauss_legendre(order);
  for (int p = 0; p < panels; ++p) {
    double t0 = brk[p + 1], t1 = brk[p];  // fractions of |b-a| from sing
    double x0, x1;
    if (at_left) {
      x0 = a + t0 * len;
      x1 = a + t1 * len;
    } else {
      x0 = b - t1 * len;
      x1 = b - t0 * len;
    }
    double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
    for (int i = 0; i < order; ++i) {
      out.nodes.push_back(mid + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

Rule1D graded_interior(double a, double b, double c, int panels, int order) {
  Rule1D left = graded_toward(a, c, c, panels, order);
  Rule1D right = graded_toward(c, b, c, panels, order);
  Rule1D out = left;
  out.nodes.insert(out.nodes.end(), right.nodes.begin(), right.nodes.end());
  out.weights.insert(out.weights.end(), right.weights.begin(),
                     right.weights.end());
  return out;
}

}  // namespace fundsol
