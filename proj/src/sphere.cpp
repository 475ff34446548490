#include "fundsol/sphere.hpp"

#include <cmath>

#include "fundsol/errors.hpp"
#include "fundsol/fd.hpp"
#include "fundsol/gauss.hpp"

namespace fundsol {

SphereQuadrature build_quadrature(int n, int order) {
  if (order < 8) order = 8;
  SphereQuadrature q;
  q.n = n;
  q.order = order;
  if (n == 2) {
    int M = 2 * order;
    q.nodes.resize(M);
    q.weights.assign(M, 2 * M_PI / M);
    q.antipode.resize(M);
    int half = M / 2;
    for (int i = 0; i < half; ++i) {
      double phi = 2 * M_PI * i / M;
      q.nodes[i] = {std::cos(phi), std::sin(phi)};
      // Exact floating-point antipode.
      q.nodes[i + half] = {-q.nodes[i][0], -q.nodes[i][1]};
      q.antipode[i] = i + half;
      q.antipode[i + half] = i;
    }
  } else if (n == 3) {
    int np = order + order % 2;  // even polar count: no equatorial node
    int M = 2 * order;
    Rule1D gl = gauss_legendre(np);
    int halfp = np / 2;
    q.nodes.resize(static_cast<std::size_t>(np) * M);
    q.weights.resize(q.nodes.size());
    q.antipode.resize(q.nodes.size());
    for (int i = 0; i < halfp; ++i) {
      // Positive-z half; the mirror node is the exact negation.
      double u = std::abs(gl.nodes[np - 1 - i]);
      double rho = std::sqrt(1.0 - u * u);
      double w = gl.weights[np - 1 - i] * 2 * M_PI / M;
      for (int j = 0; j < M; ++j) {
        double phi = 2 * M_PI * j / M;
        std::vector<double> p = {rho * std::cos(phi), rho * std::sin(phi), u};
        int idx = i * M + j;
        int idx2 = (np - 1 - i) * M + j;
        q.nodes[idx] = p;
        q.nodes[idx2] = {-p[0], -p[1], -p[2]};
        q.weights[idx] = w;
        q.weights[idx2] = w;
        q.antipode[idx] = idx2;
        q.antipode[idx2] = idx;
      }
    }
  } else {
    throw UnsupportedDimension("build_quadrature: n must be 2 or 3");
  }
  return q;
}

int harmonic_basis_size(int n, int L) {
  if (n == 2) return 2 * L + 1;
  if (n == 3) return (L + 1) * (L + 1);
  throw UnsupportedDimension("harmonic_basis_size: n must be 2 or 3");
}

int harmonic_degree(int n, int idx) {
  if (n == 2) return (idx + 1) / 2;
  if (n == 3) return static_cast<int>(std::sqrt(static_cast<double>(idx)));
  throw UnsupportedDimension("harmonic_degree: n must be 2 or 3");
}

std::vector<double> harmonic_basis(int n, int L,
                                   const std::vector<double>& theta) {
  std::vector<double> b(harmonic_basis_size(n, L));
  if (n == 2) {
    // C_l = cos(l phi), S_l = sin(l phi) by the angle-addition recurrence in
    // (cos phi, sin phi) only; negating theta negates every product term, so
    // parity is exact in floating point.
    double c = theta[0], s = theta[1];
    double C = 1.0, S = 0.0;
    b[0] = 1.0 / std::sqrt(2 * M_PI);
    double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    for (int l = 1; l <= L; ++l) {
      double Cn = C * c - S * s;
      double Sn = S * c + C * s;
      C = Cn;
      S = Sn;
      b[2 * l - 1] = C * inv_sqrt_pi;
      b[2 * l] = S * inv_sqrt_pi;
    }
    return b;
  }
  // n == 3: fully normalized associated Legendre functions scaled by
  // rho^{-m} (H) combined with rho^m cos(m phi), rho^m sin(m phi) (C, S),
  // all via Cartesian recurrences.
  double x = theta[0], y = theta[1], z = theta[2];
  double inv_sqrt_4pi = 1.0 / std::sqrt(4 * M_PI);
  std::vector<double> C(L + 1), S(L + 1);
  C[0] = 1.0;
  S[0] = 0.0;
  for (int m = 1; m <= L; ++m) {
    C[m] = C[m - 1] * x - S[m - 1] * y;
    S[m] = S[m - 1] * x + C[m - 1] * y;
  }
  // H[m..L] column by column in m.
  std::vector<double> Hprev(L + 1), Hcur(L + 1);
  double sect = 1.0;  // H_mm
  for (int m = 0; m <= L; ++m) {
    if (m == 1)
      sect *= std::sqrt(3.0);  // includes the sqrt(2) of the real m>0 pair
    else if (m > 1)
      sect *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    double Hm2 = 0.0, Hm1 = 0.0;
    for (int l = m; l <= L; ++l) {
      double H;
      if (l == m) {
        H = sect;
      } else if (l == m + 1) {
        H = std::sqrt(2.0 * m + 3.0) * z * Hm1;
      } else {
        double a = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) /
                             ((l - m) * (l + m)));
        double bb = std::sqrt((2.0 * l + 1.0) * (l + m - 1.0) * (l - m - 1.0) /
                              ((l - m) * (l + m) * (2.0 * l - 3.0)));
        H = a * z * Hm1 - bb * Hm2;
      }
      Hm2 = Hm1;
      Hm1 = H;
      int base = l * l;
      if (m == 0) {
        b[base] = H * inv_sqrt_4pi;
      } else {
        b[base + 2 * m - 1] = H * C[m] * inv_sqrt_4pi;
        b[base + 2 * m] = H * S[m] * inv_sqrt_4pi;
      }
    }
  }
  return b;
}

double HarmonicExpansion::eval(const std::vector<double>& theta) const {
  return synthesize(*this, theta);
}

double HarmonicExpansion::norm() const {
  double s = 0;
  for (double c : coeffs) s += c * c;
  return std::sqrt(s);
}

double HarmonicExpansion::off_parity_mass(int parity) const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (harmonic_degree(n, static_cast<int>(i)) % 2 != parity)
      s += coeffs[i] * coeffs[i];
  return std::sqrt(s);
}

double HarmonicExpansion::top_degree_mass() const {
  double s = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (harmonic_degree(n, static_cast<int>(i)) == L)
      s += coeffs[i] * coeffs[i];
  return std::sqrt(s);
}

bool HarmonicExpansion::is_zero(double tol) const {
  for (double c : coeffs)
    if (std::abs(c) > tol) return false;
  return true;
}

void HarmonicExpansion::drop_small(double tol) {
  for (double& c : coeffs)
    if (std::abs(c) < tol) c = 0.0;
}

HarmonicExpansion& HarmonicExpansion::operator+=(const HarmonicExpansion& o) {
  if (o.n != n) throw Error("HarmonicExpansion: dimension mismatch");
  if (o.L > L) {
    coeffs.resize(harmonic_basis_size(n, o.L), 0.0);
    L = o.L;
  }
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

HarmonicExpansion& HarmonicExpansion::operator*=(double c) {
  for (double& v : coeffs) v *= c;
  return *this;
}

HarmonicExpansion forward_transform(const SphereQuadrature& q,
                                    const std::vector<double>& samples, int L) {
  if (q.order < 2 * L)
    throw InvariantViolated(
        "forward_transform: quadrature order below 2L (aliasing risk)");
  if (samples.size() != q.nodes.size())
    throw Error("forward_transform: sample count mismatch");
  HarmonicExpansion e(q.n, L);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    double wv = q.weights[i] * samples[i];
    if (wv == 0.0) continue;
    std::vector<double> b = harmonic_basis(q.n, L, q.nodes[i]);
    for (std::size_t j = 0; j < b.size(); ++j) e.coeffs[j] += wv * b[j];
  }
  return e;
}

double synthesize(const HarmonicExpansion& e, const std::vector<double>& theta) {
  std::vector<double> b = harmonic_basis(e.n, e.L, theta);
  double s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += e.coeffs[i] * b[i];
  return s;
}

double gunter_derivative(const ScalarField& extension,
                         const std::vector<double>& theta, int axis) {
  int n = static_cast<int>(theta.size());
  std::vector<double> grad(n);
  for (int j = 0; j < n; ++j)
    grad[j] = fd::partial(extension, theta, MultiIndex::unit(n, j), 1e-3, 6);
  double radial = 0;
  for (int j = 0; j < n; ++j) radial += theta[j] * grad[j];
  return grad[axis] - theta[axis] * radial;
}

HarmonicExpansion multiply_by_coordinate(const HarmonicExpansion& g, int axis) {
  SphereQuadrature q = build_quadrature(g.n, 2 * (g.L + 1) + 2);
  std::vector<double> samples(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    samples[i] = synthesize(g, q.nodes[i]) * q.nodes[i][axis];
  return forward_transform(q, samples, g.L + 1);
}

namespace {

// d/d phi of a circular expansion, same band.
HarmonicExpansion circle_phi_derivative(const HarmonicExpansion& g) {
  HarmonicExpansion d(2, g.L);
  for (int l = 1; l <= g.L; ++l) {
    d.coeffs[2 * l - 1] = l * g.coeffs[2 * l];
    d.coeffs[2 * l] = -l * g.coeffs[2 * l - 1];
  }
  return d;
}

}  // namespace

HarmonicExpansion gunter_derivative(const HarmonicExpansion& g, int axis) {
  if (g.n == 2) {
    // D_theta1 = -sin(phi) d/dphi, D_theta2 = cos(phi) d/dphi.
    HarmonicExpansion d = circle_phi_derivative(g);
    HarmonicExpansion out = multiply_by_coordinate(d, axis == 0 ? 1 : 0);
    if (axis == 0) out *= -1.0;
    return out;
  }
  // n == 3: differentiate the synthesized field along the great circle
  // c(eps) = normalize(theta + eps t), t = e_axis - theta_axis theta, whose
  // velocity at eps = 0 is t; re-project at band L+1.
  fd::Stencil st = fd::stencil(1, 6);
  const double h = 3e-3;
  SphereQuadrature q = build_quadrature(3, 2 * (g.L + 1) + 2);
  std::vector<double> samples(q.nodes.size());
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const std::vector<double>& th = q.nodes[i];
    std::vector<double> t(3);
    for (int j = 0; j < 3; ++j)
      t[j] = (j == axis ? 1.0 : 0.0) - th[axis] * th[j];
    double acc = 0;
    for (int m = 0; m < 2 * st.radius + 1; ++m) {
      if (st.weights[m] == 0.0) continue;
      double eps = (m - st.radius) * h;
      std::vector<double> p(3);
      double nrm = 0;
      for (int j = 0; j < 3; ++j) {
        p[j] = th[j] + eps * t[j];
        nrm += p[j] * p[j];
      }
      nrm = std::sqrt(nrm);
      for (int j = 0; j < 3; ++j) p[j] /= nrm;
      acc += st.weights[m] * synthesize(g, p);
    }
    samples[i] = acc / h;
  }
  return forward_transform(q, samples, g.L + 1);
}

std::vector<std::vector<double>> rotation_map(const std::vector<double>& eta,
                                              const std::vector<double>& theta) {
  int n = static_cast<int>(eta.size());
  double dot = 0;
  for (int i = 0; i < n; ++i) dot += eta[i] * theta[i];
  if (dot <= 1e-10)
    throw HalfSphereViolation(
        "rotation_map: theta outside the half sphere around eta");
  std::vector<std::vector<double>> T(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      T[j][k] = (j == k ? 1.0 : 0.0) + 2 * theta[j] * eta[k] -
                (theta[j] + eta[j]) * (theta[k] + eta[k]) / (1.0 + dot);
  return T;
}

std::vector<double> funk_hecke_multipliers(int n, int L, const ZonalKernel& k) {
  std::vector<double> lambda(L + 1, 0.0);
  int panels = 18;
  int order = std::max(24, 2 * L / 5 + 12);
  if (n == 2) {
    // lambda_l = 4 int_0^{pi/2} psi(cos t) cos(l t) dt for matching parity.
    Rule1D r = k.singular
                   ? graded_toward(0.0, M_PI / 2, M_PI / 2, panels, order)
                   : gauss_legendre(order * 8, 0.0, M_PI / 2);
    std::vector<double> psi_vals(r.nodes.size());
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
      psi_vals[i] = k.psi_abs(std::cos(r.nodes[i]));
    for (int l = 0; l <= L; ++l) {
      if ((l + k.parity) % 2 != 0) continue;
      double s = 0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s += r.weights[i] * psi_vals[i] * std::cos(l * r.nodes[i]);
      lambda[l] = 4 * s;
    }
    return lambda;
  }
  if (n == 3) {
    // lambda_l = 4 pi int_0^1 psi(u) P_l(u) du for matching parity.
    Rule1D r = k.singular ? graded_toward(0.0, 1.0, 0.0, panels, order)
                          : gauss_legendre(order * 8, 0.0, 1.0);
    std::size_t m = r.nodes.size();
    std::vector<double> psi_vals(m), P0(m, 1.0), P1(m), P2(m);
    for (std::size_t i = 0; i < m; ++i) {
      psi_vals[i] = k.psi_abs(r.nodes[i]);
      P1[i] = r.nodes[i];
    }
    for (int l = 0; l <= L; ++l) {
      const std::vector<double>& P = (l == 0) ? P0 : P1;
      if ((l + k.parity) % 2 == 0) {
        double s = 0;
        for (std::size_t i = 0; i < m; ++i)
          s += r.weights[i] * psi_vals[i] * P[i];
        lambda[l] = 4 * M_PI * s;
      }
      if (l >= 1) {
        // Advance the Legendre recurrence: P_{l+1}.
        for (std::size_t i = 0; i < m; ++i)
          P2[i] =
              ((2.0 * l + 1.0) * r.nodes[i] * P1[i] - l * P0[i]) / (l + 1.0);
        P0.swap(P1);
        P1.swap(P2);
      }
    }
    return lambda;
  }
  throw UnsupportedDimension("funk_hecke_multipliers: n must be 2 or 3");
}

HarmonicExpansion apply_multipliers(const HarmonicExpansion& g,
                                    const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) < g.L + 1)
    throw Error("apply_multipliers: multiplier list too short");
  HarmonicExpansion out = g;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] *= lambda[harmonic_degree(g.n, static_cast<int>(i))];
  return out;
}

}  // namespace fundsol
