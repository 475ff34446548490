#include "fundsol/radial_terms.hpp"

#include <algorithm>
#include <cmath>

#include "fundsol/errors.hpp"

namespace fundsol {

void RadialTermSum::add(double m, bool log_flag,
                        const HarmonicExpansion& angular) {
  if (n == 0) n = angular.n;
  if (n != angular.n) throw Error("RadialTermSum: dimension mismatch");
  for (RadialTerm& t : terms) {
    if (t.log_flag == log_flag && std::abs(t.m - m) < 1e-9) {
      t.angular += angular;
      return;
    }
  }
  terms.push_back(RadialTerm{m, log_flag, angular});
}

void RadialTermSum::prune(double tol) {
  for (RadialTerm& t : terms) t.angular.drop_small(tol);
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const RadialTerm& t) {
                               return t.angular.is_zero();
                             }),
              terms.end());
}

void RadialTermSum::sort_terms() {
  std::sort(terms.begin(), terms.end(),
            [](const RadialTerm& a, const RadialTerm& b) {
              if (a.m != b.m) return a.m < b.m;
              return a.log_flag < b.log_flag;
            });
}

double RadialTermSum::eval(const std::vector<double>& x) const {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  double r = std::sqrt(r2);
  if (r == 0) throw Error("RadialTermSum::eval: x must be nonzero");
  std::vector<double> theta(x);
  for (double& c : theta) c /= r;
  return eval_polar(r, theta);
}

double RadialTermSum::eval_polar(double r,
                                 const std::vector<double>& theta) const {
  double lg = std::log(r);
  double s = 0;
  for (const RadialTerm& t : terms) {
    double v = std::pow(r, t.m) * synthesize(t.angular, theta);
    if (t.log_flag) v *= lg;
    s += v;
  }
  return s;
}

RadialTermSum radial_laplacian_step(const RadialTerm& term, int n) {
  RadialTermSum out;
  out.n = n;
  double m = term.m;
  HarmonicExpansion main = term.angular;
  for (std::size_t i = 0; i < main.coeffs.size(); ++i) {
    int l = harmonic_degree(n, static_cast<int>(i));
    main.coeffs[i] *= m * (m + n - 2) - static_cast<double>(l) * (l + n - 2);
  }
  if (!main.is_zero()) out.add(m - 2, term.log_flag, main);
  if (term.log_flag) {
    HarmonicExpansion extra = term.angular;
    extra *= 2 * m + n - 2;
    if (!extra.is_zero()) out.add(m - 2, false, extra);
  }
  return out;
}

RadialTermSum radial_laplacian_step(const RadialTermSum& sum) {
  RadialTermSum out;
  out.n = sum.n;
  for (const RadialTerm& t : sum.terms) {
    RadialTermSum part = radial_laplacian_step(t, sum.n);
    for (const RadialTerm& p : part.terms) out.add(p.m, p.log_flag, p.angular);
  }
  out.prune();
  out.sort_terms();
  return out;
}

RadialTermSum iterated_laplacian(const RadialTermSum& sum, int p) {
  if (p < 1) throw Error("iterated_laplacian: p must be >= 1");
  RadialTermSum cur = sum;
  for (int i = 0; i < p; ++i) cur = radial_laplacian_step(cur);
  return cur;
}

RadialTermSum partial_derivative(const RadialTermSum& sum, int axis) {
  RadialTermSum out;
  out.n = sum.n;
  for (const RadialTerm& t : sum.terms) {
    HarmonicExpansion tg = multiply_by_coordinate(t.angular, axis);
    HarmonicExpansion dg = gunter_derivative(t.angular, axis);
    HarmonicExpansion combined = tg;
    combined *= t.m;
    combined += dg;
    if (!combined.is_zero()) out.add(t.m - 1, t.log_flag, combined);
    if (t.log_flag && !tg.is_zero()) out.add(t.m - 1, false, tg);
  }
  out.prune(1e-300);
  out.sort_terms();
  return out;
}

RadialTermSum derivative(const RadialTermSum& sum, const MultiIndex& beta) {
  RadialTermSum cur = sum;
  for (int axis = 0; axis < beta.dim(); ++axis)
    for (int rep = 0; rep < beta[axis]; ++rep)
      cur = partial_derivative(cur, axis);
  return cur;
}

}  // namespace fundsol
