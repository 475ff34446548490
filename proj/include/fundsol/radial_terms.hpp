#ifndef FUNDSOL_RADIAL_TERMS_HPP
#define FUNDSOL_RADIAL_TERMS_HPP

#include <vector>

#include "fundsol/multi_index.hpp"
#include "fundsol/sphere.hpp"

namespace fundsol {

/// |x|^m (log|x|)^{0 or 1} g(x/|x|) with band-limited angular part.
struct RadialTerm {
  double m = 0;
  bool log_flag = false;
  HarmonicExpansion angular;
};

/// Finite sum of RadialTerm with at most one term per (m, log_flag) pair.
struct RadialTermSum {
  int n = 0;
  std::vector<RadialTerm> terms;

  /// Merge a term into the sum (exponents matched to 1e-9).
  void add(double m, bool log_flag, const HarmonicExpansion& angular);
  /// Remove terms whose angular part is identically zero (coefficients with
  /// magnitude <= tol are treated as zero).
  void prune(double tol = 0.0);
  /// Keep terms sorted by (m, log_flag) for deterministic serialization.
  void sort_terms();

  double eval(const std::vector<double>& x) const;
  double eval_polar(double r, const std::vector<double>& theta) const;
};

/// One application of the Laplacian. For a degree-l harmonic,
/// Lap(|x|^m Y_l) = (m(m+n-2) - l(l+n-2)) |x|^{m-2} Y_l and the log variant
/// adds (2m+n-2) |x|^{m-2} Y_l without the log.
RadialTermSum radial_laplacian_step(const RadialTerm& term, int n);
RadialTermSum radial_laplacian_step(const RadialTermSum& sum);

RadialTermSum iterated_laplacian(const RadialTermSum& sum, int p);

/// Structural d/dx_axis: |x|^{m-1} (m theta_h g + D_{theta_h} g), with the
/// extra |x|^{m-1} theta_h g term for log-flagged inputs. Angular bands grow
/// by one.
RadialTermSum partial_derivative(const RadialTermSum& sum, int axis);

/// beta-fold composition of partial_derivative.
RadialTermSum derivative(const RadialTermSum& sum, const MultiIndex& beta);

}  // namespace fundsol

#endif
