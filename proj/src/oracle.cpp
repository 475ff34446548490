#include "fundsol/oracle.hpp"

#include <cmath>
#include <random>

#include "fundsol/errors.hpp"
#include "fundsol/gauss.hpp"
#include "fundsol/sphere.hpp"

namespace fundsol {

double TestFunction::operator()(const std::vector<double>& x) const {
  double q = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double u = (x[i] - center[i]) / R_supp;
    q += u * u;
  }
  if (q >= 1.0) return 0.0;
  return std::exp(1.0 / (q - 1.0));
}

ScalarField TestFunction::as_field() const {
  TestFunction copy = *this;
  return [copy](const std::vector<double>& x) { return copy(x); };
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

void k0_series(double x, double* k0, double* dk0, double* d2k0) {
  // K0 = -(log(x/2) + gamma) I0 + G with I0 = sum c_m x^{2m},
  // G = sum H_m c_m x^{2m}, c_m = 1 / (4^m (m!)^2).
  double I0 = 1, dI0 = 0, d2I0 = 0, G = 0, dG = 0, d2G = 0;
  double c = 1, H = 0;
  double x2 = x * x;
  double xp = 1;  // x^{2m}
  for (int m = 1; m <= 60; ++m) {
    c /= 4.0 * m * m;
    H += 1.0 / m;
    xp *= x2;
    double t = c * xp;
    I0 += t;
    G += H * t;
    double dt = 2 * m * c * xp / x;
    dI0 += dt;
    dG += H * dt;
    double d2t = 2 * m * (2 * m - 1) * c * xp / x2;
    d2I0 += d2t;
    d2G += H * d2t;
    if (t < 1e-19 * (std::abs(I0) + 1)) break;
  }
  double lg = std::log(x / 2) + kEulerGamma;
  *k0 = -lg * I0 + G;
  *dk0 = -I0 / x - lg * dI0 + dG;
  *d2k0 = I0 / x2 - 2 * dI0 / x - lg * d2I0 + d2G;
}

void k0_integral(double x, double* k0, double* dk0, double* d2k0) {
  // K0(x) = int_0^inf exp(-x cosh t) dt, truncated where the integrand falls
  // 46 e-folds below exp(-x).
  double T = std::acosh(1.0 + 46.0 / x);
  static const Rule1D base = gauss_legendre(200);
  double a = 0, b = T;
  double s0 = 0, s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < base.nodes.size(); ++i) {
    double t = 0.5 * (b - a) * base.nodes[i] + 0.5 * (a + b);
    double w = 0.5 * (b - a) * base.weights[i];
    double ch = std::cosh(t);
    double e = std::exp(-x * ch) * w;
    s0 += e;
    s1 -= ch * e;
    s2 += ch * ch * e;
  }
  *k0 = s0;
  *dk0 = s1;
  *d2k0 = s2;
}

}  // namespace

void bessel_k0_derivs(double x, double* k0, double* dk0, double* d2k0) {
  if (x <= 0) throw Error("bessel_k0: argument must be positive");
  if (x < 2)
    k0_series(x, k0, dk0, d2k0);
  else
    k0_integral(x, k0, dk0, d2k0);
}

double bessel_k0(double x) {
  double k0, d, d2;
  bessel_k0_derivs(x, &k0, &d, &d2);
  return k0;
}

namespace {

std::pair<std::string, std::vector<double>> parse_kernel_name(
    const std::string& s) {
  auto open = s.find('(');
  if (open == std::string::npos) return {s, {}};
  if (s.back() != ')')
    throw UnknownName("malformed kernel name: " + s);
  std::string name = s.substr(0, open);
  std::vector<double> args;
  std::string body = s.substr(open + 1, s.size() - open - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    try {
      args.push_back(std::stod(body.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw UnknownName("bad kernel parameter in: " + s);
    }
    pos = next + 1;
  }
  return {name, args};
}

double norm2(const std::vector<double>& x) {
  double s = 0;
  for (double c : x) s += c * c;
  return std::sqrt(s);
}

}  // namespace

KernelHandle kernel_from_reference(const std::string& full) {
  auto [name, args] = parse_kernel_name(full);
  KernelHandle k;
  if (name == "laplace2d") {
    k.n = 2;
    k.value = [](const std::vector<double>& x) {
      return std::log(norm2(x)) / (2 * M_PI);
    };
    k.deriv = [k](const std::vector<double>& x, const MultiIndex& b) {
      double r2 = x[0] * x[0] + x[1] * x[1];
      int d = b.order();
      if (d == 0) return std::log(r2) / (4 * M_PI);
      if (d == 1) {
        int i = (b[0] == 1) ? 0 : 1;
        return x[i] / (2 * M_PI * r2);
      }
      if (d == 2) {
        int i = (b[0] >= 1) ? 0 : 1;
        int j = (b[1] >= 1 && (b[0] < 2)) ? 1 : i;
        if (b[0] == 1 && b[1] == 1) j = 1;
        double dij = (i == j) ? 1.0 : 0.0;
        return (dij * r2 - 2 * x[i] * x[j]) / (2 * M_PI * r2 * r2);
      }
      throw MissingDerivative("laplace2d: derivatives beyond order 2");
    };
    return k;
  }
  if (name == "laplace3d") {
    k.n = 3;
    k.value = [](const std::vector<double>& x) {
      return -1.0 / (4 * M_PI * norm2(x));
    };
    k.deriv = [k](const std::vector<double>& x, const MultiIndex& b) {
      double r = norm2(x);
      int d = b.order();
      if (d == 0) return -1.0 / (4 * M_PI * r);
      if (d == 1) {
        int i = (b[0] == 1) ? 0 : (b[1] == 1 ? 1 : 2);
        return x[i] / (4 * M_PI * r * r * r);
      }
      throw MissingDerivative("laplace3d: derivatives beyond order 1");
    };
    return k;
  }
  if (name == "biharmonic2d") {
    k.n = 2;
    k.value = [](const std::vector<double>& x) {
      double r = norm2(x);
      return r * r * std::log(r) / (8 * M_PI);
    };
    return k;
  }
  if (name == "yukawa2d") {
    double kap = args.empty() ? 1.0 : args[0];
    k.n = 2;
    k.value = [kap](const std::vector<double>& x) {
      return -bessel_k0(kap * norm2(x)) / (2 * M_PI);
    };
    return k;
  }
  if (name == "yukawa3d") {
    double kap = args.empty() ? 1.0 : args[0];
    k.n = 3;
    k.value = [kap](const std::vector<double>& x) {
      double r = norm2(x);
      return -std::exp(-kap * r) / (4 * M_PI * r);
    };
    return k;
  }
  if (name == "anisotropic2d") {
    if (args.size() != 3)
      throw UnknownName("anisotropic2d needs (a11, a12, a22)");
    double a11 = args[0], a12 = args[1], a22 = args[2];
    double det = a11 * a22 - a12 * a12;
    if (det <= 0) throw UnknownName("anisotropic2d: matrix must be SPD");
    k.n = 2;
    k.value = [a11, a12, a22, det](const std::vector<double>& x) {
      // x^T A^{-1} x with A^{-1} = [[a22, -a12], [-a12, a11]] / det
      double q = (a22 * x[0] * x[0] - 2 * a12 * x[0] * x[1] +
                  a11 * x[1] * x[1]) /
                 det;
      return std::log(q) / (4 * M_PI * std::sqrt(det));
    };
    return k;
  }
  throw UnknownName("unknown reference kernel: " + full);
}

double closed_form_reference(const std::string& name,
                             const std::vector<double>& x) {
  return kernel_from_reference(name).value(x);
}

double distributional_delta_test(const KernelHandle& kernel,
                                 const OperatorCoefficients& a,
                                 const TestFunction& phi, int grid) {
  if (grid < 64) grid = 64;
  int n = a.n();
  if (static_cast<int>(phi.center.size()) != n)
    throw Error("distributional_delta_test: dimension mismatch");
  double cdist = norm2(phi.center);
  double Rmax = cdist + phi.R_supp;
  if (Rmax > kernel.validity)
    throw SupportExceedsValidity(
        "test function support exceeds the kernel validity radius");
  std::vector<double> origin(n, 0.0);
  double phi0 = phi(origin);
  if (std::abs(phi0) < 1e-12)
    throw Error("distributional_delta_test: phi vanishes at the origin");

  OperatorCoefficients at = a.adjoint();
  ScalarField phif = phi.as_field();
  auto lt_phi = [&](const std::vector<double>& y) {
    return apply_operator_fd(at, phif, y);
  };
  // Skip points where every FD stencil node lies outside the support.
  auto in_reach = [&](const std::vector<double>& y) {
    double d = 0;
    for (int i = 0; i < n; ++i) {
      double u = y[i] - phi.center[i];
      d += u * u;
    }
    return std::sqrt(d) < phi.R_supp + 0.1;
  };

  // Radial rule on [0,1] with the grading substitution r = Rmax u^g.
  // Panel count follows the grid so the steep bump tails near the support
  // edge (derivatives of order 2k grow fast there) stay resolved.
  int g = (n == 2) ? 2 : 3;
  int panels = std::max(6, grid / 8);
  Rule1D radial;
  for (int p = 0; p < panels; ++p) {
    Rule1D part = gauss_legendre(16, static_cast<double>(p) / panels,
                                 static_cast<double>(p + 1) / panels);
    radial.nodes.insert(radial.nodes.end(), part.nodes.begin(),
                        part.nodes.end());
    radial.weights.insert(radial.weights.end(), part.weights.begin(),
                          part.weights.end());
  }

  double I = 0;
  if (n == 2) {
    int M = std::max(64, grid);
    std::vector<std::vector<double>> dirs(M);
    for (int j = 0; j < M; ++j) {
      double ph = 2 * M_PI * j / M;
      dirs[j] = {std::cos(ph), std::sin(ph)};
    }
    double wang = 2 * M_PI / M;
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      double u = radial.nodes[i];
      double r = Rmax * std::pow(u, g);
      if (r == 0) continue;
      double jac = radial.weights[i] * Rmax * g * std::pow(u, g - 1) * r;
      for (int j = 0; j < M; ++j) {
        std::vector<double> y = {r * dirs[j][0], r * dirs[j][1]};
        if (!in_reach(y)) continue;
        I += jac * wang * kernel.value(y) * lt_phi(y);
      }
    }
  } else {
    SphereQuadrature sq = build_quadrature(3, std::max(16, grid / 4));
    for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
      double u = radial.nodes[i];
      double r = Rmax * std::pow(u, g);
      if (r == 0) continue;
      double jac = radial.weights[i] * Rmax * g * std::pow(u, g - 1) * r * r;
      for (std::size_t j = 0; j < sq.nodes.size(); ++j) {
        std::vector<double> y = {r * sq.nodes[j][0], r * sq.nodes[j][1],
                                 r * sq.nodes[j][2]};
        if (!in_reach(y)) continue;
        I += jac * sq.weights[j] * kernel.value(y) * lt_phi(y);
      }
    }
  }
  return std::abs(I - phi0) / std::abs(phi0);
}

double residual_scan(const KernelHandle& kernel, const OperatorCoefficients& a,
                     double r_min, double r_max, int count) {
  if (r_max > kernel.validity)
    throw Error("residual_scan: annulus exceeds kernel validity");
  int n = a.n();
  std::mt19937 rng(20240817u);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double mass = 0;
  for (const auto& [alpha, v] : a.coeffs()) mass += std::abs(v);
  double worst = 0;
  for (int i = 0; i < count; ++i) {
    double r = r_min + (r_max - r_min) * unif(rng);
    std::vector<double> x(n);
    if (n == 2) {
      double ph = 2 * M_PI * unif(rng);
      x = {r * std::cos(ph), r * std::sin(ph)};
    } else {
      double u = 2 * unif(rng) - 1;
      double ph = 2 * M_PI * unif(rng);
      double rho = std::sqrt(1 - u * u);
      x = {r * rho * std::cos(ph), r * rho * std::sin(ph), r * u};
    }
    double res = apply_operator_fd(a, kernel.value, x);
    // Local kernel scale: probe |kernel| near x, times the coefficient mass,
    // over the length scale r^{2k}.
    double probe = std::abs(kernel.value(x));
    for (int d = 0; d < n; ++d) {
      std::vector<double> xp = x;
      xp[d] += 0.05 * r;
      probe = std::max(probe, std::abs(kernel.value(xp)));
    }
    double scale = mass * std::max(probe, 1e-3) / std::pow(r, 2 * a.k());
    worst = std::max(worst, std::abs(res) / scale);
  }
  return worst;
}

}  // namespace fundsol
