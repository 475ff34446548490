#include "fundsol/assembly.hpp"

#include <cmath>
#include <memory>

#include "fundsol/errors.hpp"
#include "fundsol/gauss.hpp"

namespace fundsol {

namespace {

// Crude upper estimate for the magnitude of the series term with plane-wave
// index jj at radius r, after the iterated Laplacian. Combines the class-l
// coefficient bound, a generous cap on the zonal kernel integrals, and a cap
// on the Laplacian eigenvalue factors. Only used to pick Jmax and R_valid.
double tail_term(int l, int n, int k, int jj, double r) {
  double lr = std::log(r);
  double lt = std::log(static_cast<double>(l)) +
              (jj + 1 - 2 * k) * std::log1p(static_cast<double>(l) * l) +
              (jj - n) * lr + (n + 1) * std::log(jj + 3.0) +
              std::log(2.0 + std::log(jj + 2.0)) +
              std::log(1.0 + std::abs(lr)) + std::log(16.0) -
              std::lgamma(jj + 1.0);
  return std::exp(lt);
}

double tail_sum(int l, int n, int k, int Jmax, double r) {
  double s = 0;
  double prev = std::numeric_limits<double>::infinity();
  for (int j = Jmax + 1; j <= Jmax + 600; ++j) {
    double t = tail_term(l, n, k, 2 * k + j, r);
    s += t;
    if (t < prev && (t < 1e-300 || t < 1e-16 * s)) break;
    prev = t;
  }
  return s;
}

double r_valid_from_bound(int l, int n, int k, int Jmax) {
  const double tol = 1e-10;
  double lo = 1e-3, hi = 1e3;
  if (tail_sum(l, n, k, Jmax, lo) > tol) return lo;
  if (tail_sum(l, n, k, Jmax, hi) < tol) return hi;
  for (int it = 0; it < 120; ++it) {
    double mid = std::sqrt(lo * hi);
    if (tail_sum(l, n, k, Jmax, mid) < tol)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// Expansions of a_{2k+j}(xi), j = 0..Jmax, at band L.
std::vector<HarmonicExpansion> angular_data(const OperatorCoefficients& a,
                                            int Jmax, int L,
                                            double* top_mass_rel) {
  int two_k = 2 * a.k();
  ContourSpec c = ContourSpec::for_operator(a);
  SphereQuadrature quad = build_quadrature(a.n(), 2 * L + 2);
  std::size_t nn = quad.nodes.size();
  std::vector<std::vector<double>> coef(nn);
  for (std::size_t i = 0; i < nn; ++i)
    coef[i] = series_coefficients(a, quad.nodes[i], two_k + Jmax, c).coeffs;
  std::vector<HarmonicExpansion> g(Jmax + 1);
  double worst = 0;
  std::vector<double> samples(nn);
  for (int j = 0; j <= Jmax; ++j) {
    for (std::size_t i = 0; i < nn; ++i) samples[i] = coef[i][two_k + j];
    g[j] = forward_transform(quad, samples, L);
    double nm = g[j].norm();
    if (nm > 1e-13) worst = std::max(worst, g[j].top_degree_mass() / nm);
  }
  if (top_mass_rel) *top_mass_rel = worst;
  return g;
}

RadialTermSum assemble_W(const OperatorCoefficients& a,
                         const std::vector<HarmonicExpansion>& g, int L) {
  int n = a.n();
  int two_k = 2 * a.k();
  int Jmax = static_cast<int>(g.size()) - 1;
  // (2 pi i)^{n - p_n} is (2 pi i)^2 = -4 pi^2 for both n = 2 and n = 3.
  const double c_const = -4 * M_PI * M_PI;
  RadialTermSum W;
  W.n = n;
  std::vector<double> Hnum(two_k + Jmax + 1, 0.0);
  for (int i = 1; i < static_cast<int>(Hnum.size()); ++i)
    Hnum[i] = Hnum[i - 1] + 1.0 / i;
  for (int j = 0; j <= Jmax; ++j) {
    int jj = two_k + j;
    if (n % 2 == 1) {
      double scale = std::exp(-std::lgamma(jj + 2.0)) / (4.0 * c_const);
      ZonalKernel ker;
      ker.parity = jj % 2;
      ker.singular = false;
      ker.psi_abs = [jj, scale](double u) {
        return scale * std::pow(u, jj + 1);
      };
      W.add(jj + 1.0, false,
            apply_multipliers(g[j], funk_hecke_multipliers(n, L, ker)));
    } else {
      double s0 = std::exp(-std::lgamma(jj + 1.0)) / c_const;
      double H = Hnum[jj];
      ZonalKernel nolog;
      nolog.parity = jj % 2;
      nolog.singular = true;
      nolog.psi_abs = [jj, s0, H](double u) {
        return s0 * std::pow(u, jj) * (H - std::log(u));
      };
      ZonalKernel logk;
      logk.parity = jj % 2;
      logk.singular = false;
      logk.psi_abs = [jj, s0](double u) { return -s0 * std::pow(u, jj); };
      W.add(static_cast<double>(jj), false,
            apply_multipliers(g[j], funk_hecke_multipliers(n, L, nolog)));
      W.add(static_cast<double>(jj), true,
            apply_multipliers(g[j], funk_hecke_multipliers(n, L, logk)));
    }
  }
  W.prune();
  W.sort_terms();
  return W;
}

double binom(int nn, int kk) {
  double v = 1;
  for (int i = 0; i < kk; ++i) v = v * (nn - i) / (i + 1);
  return v;
}

// Convert a log-term angular function at integer exponent m into monomial
// coefficients of the degree-m polynomial sum_l |x|^{m-l} H_l(x), where H_l
// is the solid-harmonic extension of the degree-l component.
void accumulate_b(std::map<MultiIndex, double>& b, int m,
                  const HarmonicExpansion& h) {
  double scale = std::max(1.0, h.norm());
  double s2pi = std::sqrt(2 * M_PI), spi = std::sqrt(M_PI);
  for (int l = 0; l <= h.L; ++l) {
    double cc = (l == 0) ? h.coeffs[0] : h.coeffs[2 * l - 1];
    double ss = (l == 0) ? 0.0 : h.coeffs[2 * l];
    double mag = std::max(std::abs(cc), std::abs(ss));
    if (mag == 0.0) continue;
    if (l > m || (m - l) % 2 != 0) {
      if (mag > 1e-8 * scale)
        throw InvariantViolated(
            "log-term angular part is not a degree-" + std::to_string(m) +
            " polynomial (stray harmonic degree " + std::to_string(l) + ")");
      continue;
    }
    cc /= (l == 0) ? s2pi : spi;
    ss /= spi;
    int q = (m - l) / 2;
    for (int i = 0; i <= q; ++i) {
      double bq = binom(q, i);
      for (int tt = 0; tt <= l; ++tt) {
        double bl = binom(l, tt);
        // i^tt splits Re((x+iy)^l) and Im((x+iy)^l).
        double re = 0, im = 0;
        switch (tt % 4) {
          case 0: re = bl; break;
          case 1: im = bl; break;
          case 2: re = -bl; break;
          case 3: im = -bl; break;
        }
        double val = bq * (cc * re + ss * im);
        if (val == 0.0) continue;
        MultiIndex alpha({(l - tt) + 2 * (q - i), tt + 2 * i});
        b[alpha] += val;
      }
    }
  }
}

}  // namespace

RadialTermSum build_W_series(const OperatorCoefficients& a, int Jmax, int L) {
  std::vector<HarmonicExpansion> g = angular_data(a, Jmax, L, nullptr);
  return assemble_W(a, g, L);
}

double FundamentalSolutionTable::remainder_bound(double r) const {
  return tail_sum(class_l, a.n(), a.k(), Jmax, r);
}

FundamentalSolutionTable build_table(const OperatorCoefficients& a, int Jmax) {
  BuildOptions o;
  o.Jmax = Jmax;
  return build_table(a, o);
}

FundamentalSolutionTable build_table(const OperatorCoefficients& a,
                                     const BuildOptions& opts) {
  int n = a.n(), k = a.k(), two_k = 2 * k;
  if (n != 2 && n != 3)
    throw UnsupportedDimension("build_table: n must be 2 or 3");
  FundamentalSolutionTable t(a);
  t.class_l = class_index(a);

  int Jmax = std::max(0, opts.Jmax);
  if (opts.target_radius > 0) {
    while (Jmax < 120 &&
           tail_sum(t.class_l, n, k, Jmax, opts.target_radius) > 1e-10)
      Jmax += 5;
  }
  t.Jmax = Jmax;

  int L = opts.L > 0 ? opts.L : (n == 2 ? 24 : 16);
  int Lcap = (n == 2) ? 64 : 40;
  std::vector<HarmonicExpansion> g;
  for (;;) {
    double top = 0;
    g = angular_data(a, Jmax, L, &top);
    if (top < 1e-10 || L >= Lcap) break;
    L = std::min(Lcap, L + 8);
  }
  t.L = L;

  int p = (n % 2 == 1) ? (n + 1) / 2 : n / 2;
  t.terms = iterated_laplacian(assemble_W(a, g, L), p);
  t.terms.prune(0.0);
  t.terms.sort_terms();

  t.f.assign(Jmax + 1, HarmonicExpansion(n, L));
  for (const RadialTerm& term : t.terms.terms) {
    long m = std::lround(term.m);
    if (!term.log_flag) {
      long j = m - (two_k - n);
      if (j < 0 || j > Jmax)
        throw InvariantViolated("series produced an unexpected exponent " +
                                std::to_string(m));
      t.f[j] = term.angular;
      double nm = t.f[j].norm();
      if (t.f[j].off_parity_mass(static_cast<int>(j) % 2) >
          1e-8 * std::max(1.0, nm))
        throw InvariantViolated("parity violation in f_" + std::to_string(j));
    } else {
      if (n % 2 == 1)
        throw InvariantViolated("log term produced for odd dimension");
      accumulate_b(t.b, static_cast<int>(m), term.angular);
    }
  }
  for (auto it = t.b.begin(); it != t.b.end();)
    it = (std::abs(it->second) < 1e-14) ? t.b.erase(it) : std::next(it);
  t.parity_checked = true;
  t.R_valid = r_valid_from_bound(t.class_l, n, k, Jmax);
  return t;
}

double eval_S(const FundamentalSolutionTable& t, const std::vector<double>& x) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  double r = std::sqrt(r2);
  if (r == 0) throw Error("eval_S: x must be nonzero");
  if (r > t.R_valid)
    throw OutsideValidity("eval_S: |x| = " + std::to_string(r) +
                          " exceeds R_valid = " + std::to_string(t.R_valid));
  return t.terms.eval(x);
}

double eval_S0(const FundamentalSolutionTable& t,
               const std::vector<double>& x) {
  int n = t.a.n(), two_k = 2 * t.a.k();
  double r2 = 0;
  for (double c : x) r2 += c * c;
  double r = std::sqrt(r2);
  if (r == 0) throw Error("eval_S0: x must be nonzero");
  std::vector<double> theta(x);
  for (double& c : theta) c /= r;
  double s = std::pow(r, two_k - n) * synthesize(t.f[0], theta);
  if (n % 2 == 0) {
    double poly = 0;
    for (const auto& [alpha, v] : t.b)
      if (alpha.order() == two_k - n) poly += v * alpha.monomial(x);
    s += std::log(r) * poly;
  }
  return s;
}

double eval_S_derivative(const FundamentalSolutionTable& t,
                         const std::vector<double>& x,
                         const MultiIndex& beta) {
  double r2 = 0;
  for (double c : x) r2 += c * c;
  double r = std::sqrt(r2);
  if (r == 0) throw Error("eval_S_derivative: x must be nonzero");
  if (r > t.R_valid)
    throw OutsideValidity("eval_S_derivative: |x| exceeds R_valid");
  if (beta.order() == 0) return t.terms.eval(x);
  return derivative(t.terms, beta).eval(x);
}

ScalarField make_W0_field(const OperatorCoefficients& a,
                          const SphereQuadrature& quad) {
  if (a.n() % 2 == 0)
    throw UnsupportedDimension("make_W0_field: n must be odd");
  ContourSpec c = ContourSpec::for_operator(a);
  int J = 2 * a.k() + 40;
  auto pws = std::make_shared<std::vector<PlaneWaveCoefficients>>();
  pws->reserve(quad.nodes.size());
  for (const auto& xi : quad.nodes)
    pws->push_back(series_coefficients(a, xi, J, c));
  auto gl = std::make_shared<Rule1D>(gauss_legendre(32, 0.0, 1.0));
  // (2 pi i)^{n-1} = -4 pi^2 for n = 3.
  const double pref = 1.0 / (4.0 * (-4 * M_PI * M_PI));
  SphereQuadrature q = quad;
  return [q, pws, gl, pref](const std::vector<double>& x) -> double {
    double s = 0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
      double A = 0;
      for (std::size_t d = 0; d < x.size(); ++d) A += x[d] * q.nodes[i][d];
      if (A == 0) continue;
      const PlaneWaveCoefficients& pw = (*pws)[i];
      double inner = 0;
      for (std::size_t m = 0; m < gl->nodes.size(); ++m)
        inner += gl->weights[m] * pw.v(A * (1.0 - gl->nodes[m]));
      s += q.weights[i] * std::abs(A) * inner;
    }
    return pref * s;
  };
}

double compute_W0(const OperatorCoefficients& a, const std::vector<double>& x,
                  const SphereQuadrature& quad) {
  return make_W0_field(a, quad)(x);
}

double compute_W1(const OperatorCoefficients& a,
                  const std::vector<double>& x) {
  if (a.n() != 2) throw UnsupportedDimension("compute_W1: implemented for n=2");
  ContourSpec c = ContourSpec::for_operator(a);
  int J = 2 * a.k() + 45;
  double phix = std::atan2(x[1], x[0]);
  // The factor log|x . xi| blows up where xi is orthogonal to x; grade the
  // angular quadrature into those two points.
  std::vector<Rule1D> rules = {
      graded_toward(phix - M_PI / 2, phix, phix - M_PI / 2),
      graded_toward(phix, phix + M_PI / 2, phix + M_PI / 2),
      graded_toward(phix + M_PI / 2, phix + M_PI, phix + M_PI / 2),
      graded_toward(phix + M_PI, phix + 3 * M_PI / 2, phix + 3 * M_PI / 2)};
  double s = 0;
  for (const Rule1D& r : rules) {
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      std::vector<double> xi = {std::cos(r.nodes[i]), std::sin(r.nodes[i])};
      double A = x[0] * xi[0] + x[1] * xi[1];
      if (A == 0) continue;
      PlaneWaveCoefficients pw = series_coefficients(a, xi, J, c);
      s += r.weights[i] * pw.v(A) * std::log(std::abs(A));
    }
  }
  // -1/(2 pi i)^2 = 1/(4 pi^2).
  return s / (4 * M_PI * M_PI);
}

double compute_W2(const OperatorCoefficients& a,
                  const std::vector<double>& x) {
  if (a.n() != 2) throw UnsupportedDimension("compute_W2: implemented for n=2");
  ContourSpec c = ContourSpec::for_operator(a);
  int J = 2 * a.k() + 45;
  SphereQuadrature quad = build_quadrature(2, 64);
  Rule1D gl = gauss_legendre(40, 0.0, 1.0);
  double s = 0;
  for (std::size_t i = 0; i < quad.nodes.size(); ++i) {
    double A = x[0] * quad.nodes[i][0] + x[1] * quad.nodes[i][1];
    if (A == 0) continue;
    PlaneWaveCoefficients pw = series_coefficients(a, quad.nodes[i], J, c);
    // (v(A - t) - v(A)) / t at t = A*s, rewritten with the divided-difference
    // identity (A^j - B^j)/(A - B) = sum_q A^q B^{j-1-q} to stay stable for
    // small t.
    double inner = 0;
    std::vector<double> Apow(pw.J + 1), Bpow(pw.J + 1);
    Apow[0] = 1.0;
    for (int q = 1; q <= pw.J; ++q) Apow[q] = Apow[q - 1] * A;
    for (std::size_t mgl = 0; mgl < gl.nodes.size(); ++mgl) {
      double B = A * (1.0 - gl.nodes[mgl]);
      Bpow[0] = 1.0;
      for (int q = 1; q <= pw.J; ++q) Bpow[q] = Bpow[q - 1] * B;
      double fact = 1.0;
      double dd = 0;
      for (int j = 1; j <= pw.J; ++j) {
        fact *= j;
        if (pw.coeffs[j] == 0.0) continue;
        double psum = 0;
        for (int q = 0; q < j; ++q) psum += Apow[q] * Bpow[j - 1 - q];
        dd += pw.coeffs[j] / fact * psum;
      }
      inner += gl.weights[mgl] * (-dd);
    }
    s += quad.weights[i] * A * inner;
  }
  // -1/(2 pi i)^2 = 1/(4 pi^2).
  return s / (4 * M_PI * M_PI);
}

}  // namespace fundsol
