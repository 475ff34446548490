#ifndef FUNDSOL_CONTOUR_HPP
#define FUNDSOL_CONTOUR_HPP

#include <vector>

#include "fundsol/operator_coefficients.hpp"

namespace fundsol {

/// Circle |zeta| = radius sampled by the trapezoid rule. Node count is the
/// starting resolution; evaluations double it until two levels agree to
/// 1e-12 (cap 4096).
struct ContourSpec {
  double radius = 0.0;
  int nodes = 64;

  static ContourSpec for_operator(const OperatorCoefficients& a);
};

/// 2 * max(1, 1 + sum_{|alpha|<=2k-1}|a_alpha| / margin): a contour radius
/// strictly clear of the zeros of zeta -> P[a](zeta xi).
double contour_radius(const OperatorCoefficients& a);

/// Taylor coefficients a_j of the plane-wave solution in the variable
/// s = x.xi - t, with j = 0..J. a_j = 0 for j < 2k and
/// a_{2k} = 1 / P0[a](xi).
struct PlaneWaveCoefficients {
  std::vector<double> xi;
  std::vector<double> coeffs;  // index j = 0..J
  int J = 0;
  int two_k = 0;
  double tail_bound = 0.0;  // bound on |a_{J+1}| from the class estimate

  /// w(xi, s) = sum_{j>=2k} a_j s^{j-2k} / j!  (the factored profile with
  /// v = s^{2k} w). For |s| < 1e-8 returns the limit a_{2k}/(2k)!.
  double w(double s) const;

  /// v as a function of s = x.xi - t.
  double v(double s) const { return std::pow(s, two_k) * w(s); }
};

/// (1/2 pi i) contour integral of e^{s zeta} / (zeta P[a](zeta xi)),
/// s = x.xi - t. Imaginary residue of the quadrature must stay < 1e-10.
double v_eval(const OperatorCoefficients& a, const std::vector<double>& x,
              const std::vector<double>& xi, double t, const ContourSpec& c);

/// a_0..a_J by contour quadrature; enforces the vanishing and leading
/// coefficient invariants.
PlaneWaveCoefficients series_coefficients(const OperatorCoefficients& a,
                                          const std::vector<double>& xi, int J,
                                          const ContourSpec& c);

/// Class-l coefficient bound l (1+l^2)^{j+1-2k}.
double truncation_bound(int l, int j, int k);

}  // namespace fundsol

#endif
