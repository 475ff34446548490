#ifndef FUNDSOL_FD_HPP
#define FUNDSOL_FD_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "fundsol/errors.hpp"
#include "fundsol/multi_index.hpp"

namespace fundsol::fd {

/// Centered finite-difference stencil for the d-th derivative.
/// weights[i] corresponds to offset i - radius; divide the weighted sum
/// by h^d. Accuracy order is 2*radius + 1 - d (>= 4 for the defaults used
/// throughout).
struct Stencil {
  int d = 0;
  int radius = 0;
  std::vector<double> weights;
};

inline Stencil stencil(int d, int min_order = 4) {
  Stencil s;
  s.d = d;
  int radius = (d + min_order) / 2;
  if (2 * radius < d + min_order) ++radius;
  s.radius = radius;
  int m = 2 * radius + 1;
  // Solve sum_i w_i * off_i^q = d! * delta_{q,d}, q = 0..m-1.
  std::vector<double> A(static_cast<std::size_t>(m) * m);
  std::vector<double> b(m, 0.0);
  for (int q = 0; q < m; ++q) {
    for (int i = 0; i < m; ++i) {
      double off = i - radius;
      A[q * m + i] = std::pow(off, q);
    }
  }
  double dfac = 1.0;
  for (int i = 2; i <= d; ++i) dfac *= i;
  b[d] = dfac;
  // Gaussian elimination with partial pivoting.
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
    if (piv != col) {
      for (int c = 0; c < m; ++c) std::swap(A[col * m + c], A[piv * m + c]);
      std::swap(b[col], b[piv]);
    }
    double diag = A[col * m + col];
    for (int r = col + 1; r < m; ++r) {
      double f = A[r * m + col] / diag;
      for (int c = col; c < m; ++c) A[r * m + c] -= f * A[col * m + c];
      b[r] -= f * b[col];
    }
  }
  s.weights.assign(m, 0.0);
  for (int r = m - 1; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < m; ++c) acc -= A[r * m + c] * s.weights[c];
    s.weights[r] = acc / A[r * m + r];
  }
  return s;
}

using Field = std::function<double(const std::vector<double>&)>;

/// Mixed partial d^alpha f(x) by tensor composition of centered stencils.
inline double partial(const Field& f, std::vector<double> x,
                      const MultiIndex& alpha, double h, int min_order = 4) {
  // Recursive over axes with nonzero alpha component.
  int axis = -1;
  for (int i = 0; i < alpha.dim(); ++i)
    if (alpha[i] > 0) {
      axis = i;
      break;
    }
  if (axis < 0) return f(x);
  Stencil s = stencil(alpha[axis], min_order);
  MultiIndex rest = alpha;
  rest[axis] = 0;
  double acc = 0.0;
  double x0 = x[axis];
  for (int i = 0; i < 2 * s.radius + 1; ++i) {
    if (s.weights[i] == 0.0) continue;
    x[axis] = x0 + (i - s.radius) * h;
    acc += s.weights[i] * partial(f, x, rest, h, min_order);
  }
  x[axis] = x0;
  return acc / std::pow(h, alpha[axis]);
}

/// partial() with Richardson-style step halving until two successive
/// estimates agree to `tol` (absolute+relative mix) or `max_levels` reached.
inline double partial_adaptive(const Field& f, const std::vector<double>& x,
                               const MultiIndex& alpha, double h0 = 1e-2,
                               double tol = 1e-6, int max_levels = 6,
                               int min_order = 4) {
  double h = h0;
  double prev = partial(f, x, alpha, h, min_order);
  for (int lvl = 1; lvl < max_levels; ++lvl) {
    h *= 0.5;
    double cur = partial(f, x, alpha, h, min_order);
    double scale = std::max(1.0, std::abs(cur));
    if (std::abs(cur - prev) <= tol * scale) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace fundsol::fd

#endif
