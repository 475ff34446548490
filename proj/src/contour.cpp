#include "fundsol/contour.hpp"

#include <cmath>
#include <complex>

#include "fundsol/errors.hpp"

namespace fundsol {

double contour_radius(const OperatorCoefficients& a) {
  double margin = require_elliptic(a);
  double base = 1.0 + a.lower_order_mass() / margin;
  return 2.0 * std::max(1.0, base);
}

ContourSpec ContourSpec::for_operator(const OperatorCoefficients& a) {
  return ContourSpec{contour_radius(a), 64};
}

namespace {

// One trapezoid level: accumulate (1/2 pi i) * integral of
// f(zeta) / P[a](zeta xi) d zeta for a family of numerators.
// The numerator for slot j is zeta^{j} (slot -1 handled by caller).
// Returns values for each requested power together with e^{s zeta}/zeta
// when exp_slot is set.
struct ContourSums {
  std::vector<std::complex<double>> powers;  // per requested j
  std::vector<double> magnitudes;  // (1/N) sum |zeta^j / P|, the roundoff scale
  std::complex<double> exp_term{0, 0};
};

ContourSums trapezoid_level(const OperatorCoefficients& a,
                            const std::vector<double>& xi, double rho, int N,
                            const std::vector<int>& jpowers, bool want_exp,
                            double s) {
  ContourSums out;
  out.powers.assign(jpowers.size(), {0, 0});
  out.magnitudes.assign(jpowers.size(), 0.0);
  int jmax = 0;
  for (int j : jpowers) jmax = std::max(jmax, j);
  std::vector<std::complex<double>> zp(jmax + 1);
  for (int m = 0; m < N; ++m) {
    double ang = 2 * M_PI * m / N;
    std::complex<double> zeta = std::polar(rho, ang);
    std::complex<double> P = a.symbol(zeta, xi);
    if (std::abs(P) < 1e-12)
      throw ContourTooSmall(
          "contour node too close to a symbol zero; enlarge the radius");
    // (1/2 pi i) * sum f(zeta_m) * i zeta_m * (2 pi / N) = (1/N) sum f zeta.
    zp[0] = 1.0;
    for (int p = 1; p <= jmax; ++p) zp[p] = zp[p - 1] * zeta;
    for (std::size_t q = 0; q < jpowers.size(); ++q) {
      std::complex<double> term = zp[jpowers[q]] / P;
      out.powers[q] += term;
      out.magnitudes[q] += std::abs(term);
    }
    if (want_exp) out.exp_term += std::exp(s * zeta) / P;
  }
  double invN = 1.0 / N;
  for (auto& v : out.powers) v *= invN;
  for (auto& v : out.magnitudes) v *= invN;
  out.exp_term *= invN;
  return out;
}

}  // namespace

double v_eval(const OperatorCoefficients& a, const std::vector<double>& x,
              const std::vector<double>& xi, double t, const ContourSpec& c) {
  double s = -t;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * xi[i];
  int N = std::max(64, c.nodes);
  if (N % 2) ++N;
  std::complex<double> prev =
      trapezoid_level(a, xi, c.radius, N, {}, true, s).exp_term;
  while (N < 4096) {
    N *= 2;
    std::complex<double> cur =
        trapezoid_level(a, xi, c.radius, N, {}, true, s).exp_term;
    if (std::abs(cur - prev) < 1e-12 * std::max(1.0, std::abs(cur))) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  if (std::abs(prev.imag()) > 1e-10)
    throw InvariantViolated("v_eval: contour quadrature has imaginary residue " +
                            std::to_string(prev.imag()));
  return prev.real();
}

PlaneWaveCoefficients series_coefficients(const OperatorCoefficients& a,
                                          const std::vector<double>& xi, int J,
                                          const ContourSpec& c) {
  int two_k = 2 * a.k();
  if (J < two_k) throw Error("series_coefficients: J must be >= 2k");
  std::vector<int> jp(J + 1);
  for (int j = 0; j <= J; ++j) jp[j] = j;

  int N = std::max(64, c.nodes);
  if (N % 2) ++N;
  auto lvl = trapezoid_level(a, xi, c.radius, N, jp, false, 0.0);
  while (N < 4096) {
    N *= 2;
    auto next = trapezoid_level(a, xi, c.radius, N, jp, false, 0.0);
    bool settled = true;
    for (int j = 0; j <= J; ++j) {
      // Roundoff floor: terms of size magnitudes[j] cancel down to the
      // coefficient, so agreement below ~1e3 ulp of that scale is noise.
      double tol = 1e-12 * std::max(1.0, std::abs(next.powers[j])) +
                   1e-13 * next.magnitudes[j];
      if (std::abs(next.powers[j] - lvl.powers[j]) > tol) settled = false;
    }
    lvl = std::move(next);
    if (settled) break;
  }

  PlaneWaveCoefficients out;
  out.xi = xi;
  out.J = J;
  out.two_k = two_k;
  out.coeffs.resize(J + 1);
  for (int j = 0; j <= J; ++j) {
    std::complex<double> v = lvl.powers[j];
    double tol =
        1e-10 * std::max(1.0, std::abs(v)) + 1e-13 * lvl.magnitudes[j];
    if (std::abs(v.imag()) > tol)
      throw InvariantViolated("series coefficient a_" + std::to_string(j) +
                              " has imaginary residue");
    out.coeffs[j] = v.real();
  }
  // Vanishing below 2k: verify, then zero exactly.
  for (int j = 0; j < two_k; ++j) {
    if (std::abs(out.coeffs[j]) > 1e-6 + 1e-13 * lvl.magnitudes[j])
      throw InvariantViolated("series coefficient a_" + std::to_string(j) +
                              " fails to vanish (radius/quadrature bug)");
    out.coeffs[j] = 0.0;
  }
  double p0 = a.principal_symbol(xi);
  if (std::abs(out.coeffs[two_k] * p0 - 1.0) > 1e-8)
    throw InvariantViolated("leading coefficient a_{2k} != 1/P0");
  for (int j = 0; j <= J; ++j)
    if (std::abs(out.coeffs[j]) <
        1e-14 + 1e-13 * lvl.magnitudes[j])
      out.coeffs[j] = 0.0;
  out.tail_bound = truncation_bound(class_index(a), J + 1, a.k());
  return out;
}

double truncation_bound(int l, int j, int k) {
  if (l < 1) throw BadClassIndex("truncation_bound: l must be >= 1");
  return l * std::pow(1.0 + l * l, j + 1 - 2 * k);
}

double PlaneWaveCoefficients::w(double s) const {
  double lead = coeffs[two_k];
  double fact = 1.0;
  for (int i = 2; i <= two_k; ++i) fact *= i;
  if (std::abs(s) < 1e-8) return lead / fact;
  double sum = 0.0;
  double sp = 1.0;  // s^{j-2k}
  for (int j = two_k; j <= J; ++j) {
    sum += coeffs[j] / fact * sp;
    sp *= s;
    fact *= (j + 1);
  }
  return sum;
}

}  // namespace fundsol
