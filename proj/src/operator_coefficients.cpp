#include "fundsol/operator_coefficients.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fundsol/errors.hpp"
#include "fundsol/fd.hpp"

namespace fundsol {

OperatorCoefficients::OperatorCoefficients(int n, int k,
                                           std::map<MultiIndex, double> coeffs)
    : n_(n), k_(k), coeffs_(std::move(coeffs)) {
  if (n_ < 2) throw ParseError("operator: n must be >= 2");
  if (k_ < 1) throw ParseError("operator: k must be >= 1");
  bool has_top = false;
  for (const auto& [a, v] : coeffs_) {
    if (a.dim() != n_)
      throw ParseError("operator: multi-index dimension mismatch");
    if (a.order() > 2 * k_)
      throw ParseError("operator: |alpha| = " + std::to_string(a.order()) +
                       " exceeds 2k = " + std::to_string(2 * k_));
    if (a.order() == 2 * k_ && v != 0.0) has_top = true;
  }
  if (!has_top)
    throw ParseError("operator: no nonzero coefficient of order 2k");
}

double OperatorCoefficients::coeff(const MultiIndex& a) const {
  auto it = coeffs_.find(a);
  return it == coeffs_.end() ? 0.0 : it->second;
}

std::complex<double> OperatorCoefficients::symbol(
    std::complex<double> z, const std::vector<double>& xi) const {
  std::complex<double> s = 0.0;
  for (const auto& [a, v] : coeffs_) {
    // (z xi)^alpha = z^|alpha| xi^alpha
    std::complex<double> zp = 1.0;
    for (int i = 0; i < a.order(); ++i) zp *= z;
    s += v * zp * a.monomial(xi);
  }
  return s;
}

double OperatorCoefficients::principal_symbol(
    const std::vector<double>& xi) const {
  double s = 0.0;
  for (const auto& [a, v] : coeffs_)
    if (a.order() == 2 * k_) s += v * a.monomial(xi);
  return s;
}

double OperatorCoefficients::lower_order_mass() const {
  double s = 0.0;
  for (const auto& [a, v] : coeffs_)
    if (a.order() <= 2 * k_ - 1) s += std::abs(v);
  return s;
}

double OperatorCoefficients::top_order_scale() const {
  double s = 0.0;
  for (const auto& [a, v] : coeffs_)
    if (a.order() == 2 * k_) s = std::max(s, std::abs(v));
  return s;
}

OperatorCoefficients OperatorCoefficients::adjoint() const {
  std::map<MultiIndex, double> c;
  for (const auto& [a, v] : coeffs_)
    c[a] = (a.order() % 2 == 0) ? v : -v;
  return OperatorCoefficients(n_, k_, std::move(c));
}

OperatorCoefficients OperatorCoefficients::perturbed(const MultiIndex& alpha,
                                                     double delta) const {
  std::map<MultiIndex, double> c = coeffs_;
  c[alpha] += delta;
  return OperatorCoefficients(n_, k_, std::move(c));
}

std::string OperatorCoefficients::to_text() const {
  std::ostringstream os;
  os << "n " << n_ << "\n";
  os << "k " << k_ << "\n";
  os << std::setprecision(17);
  for (const auto& [a, v] : coeffs_) os << "a " << a.str() << " " << v << "\n";
  return os.str();
}

OperatorCoefficients OperatorCoefficients::from_text(std::istream& in) {
  int n = -1, k = -1;
  std::vector<std::pair<std::string, double>> raw;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "operator file line " + std::to_string(lineno);
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    if (key == "n") {
      if (!(is >> n)) throw ParseError(where + ": bad n");
    } else if (key == "k") {
      if (!(is >> k)) throw ParseError(where + ": bad k");
    } else if (key == "a") {
      std::string idx;
      double v;
      if (!(is >> idx >> v)) throw ParseError(where + ": bad coefficient");
      raw.emplace_back(idx, v);
    } else {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
  if (n < 0) throw ParseError("operator file: missing n");
  if (k < 0) throw ParseError("operator file: missing k");
  std::map<MultiIndex, double> coeffs;
  for (const auto& [idx, v] : raw)
    coeffs[MultiIndex::parse(idx, n)] += v;
  return OperatorCoefficients(n, k, std::move(coeffs));
}

OperatorCoefficients OperatorCoefficients::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open operator file: " + path);
  return from_text(in);
}

namespace {

std::vector<double> unit2(double phi) { return {std::cos(phi), std::sin(phi)}; }

std::vector<double> unit3(double polar, double az) {
  double s = std::sin(polar);
  return {s * std::cos(az), s * std::sin(az), std::cos(polar)};
}

// Golden-section minimization of f on [a,b].
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

}  // namespace

double ellipticity_margin(const OperatorCoefficients& a, int samples) {
  if (samples < 64) samples = 64;
  const double refine_tol = 1e-10;
  const double degenerate = 1e-8 * a.top_order_scale();
  double best = std::numeric_limits<double>::infinity();

  if (a.n() == 2) {
    double best_phi = 0;
    for (int i = 0; i < samples; ++i) {
      double phi = 2 * M_PI * i / samples;
      double v = std::abs(a.principal_symbol(unit2(phi)));
      if (v < best) {
        best = v;
        best_phi = phi;
      }
    }
    double h = 2 * M_PI / samples;
    best = golden_min(
        [&](double phi) { return std::abs(a.principal_symbol(unit2(phi))); },
        best_phi - h, best_phi + h, refine_tol);
  } else if (a.n() == 3) {
    int np = std::max(16, samples / 8);
    int na = samples;
    double bp = 0, ba = 0;
    for (int i = 0; i < np; ++i) {
      double polar = M_PI * (i + 0.5) / np;
      for (int j = 0; j < na; ++j) {
        double az = 2 * M_PI * j / na;
        double v = std::abs(a.principal_symbol(unit3(polar, az)));
        if (v < best) {
          best = v;
          bp = polar;
          ba = az;
        }
      }
    }
    // Alternating 1D golden-section refinement in the two angles.
    double hp = M_PI / np, ha = 2 * M_PI / na;
    for (int sweep = 0; sweep < 4; ++sweep) {
      double cur_ba = ba;
      best = golden_min(
          [&](double p) {
            return std::abs(a.principal_symbol(unit3(p, cur_ba)));
          },
          bp - hp, bp + hp, refine_tol);
      // Recover argmin by a short scan (golden_min returns the value only).
      double vb = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 64; ++i) {
        double p = bp - hp + 2 * hp * i / 64.0;
        double v = std::abs(a.principal_symbol(unit3(p, cur_ba)));
        if (v < vb) {
          vb = v;
          bp = p;
        }
      }
      for (int i = 0; i <= 64; ++i) {
        double az = ba - ha + 2 * ha * i / 64.0;
        double v = std::abs(a.principal_symbol(unit3(bp, az)));
        if (v < best) {
          best = v;
          ba = az;
        }
      }
      hp *= 0.25;
      ha *= 0.25;
    }
  } else {
    throw UnsupportedDimension("ellipticity_margin: n must be 2 or 3");
  }

  if (best <= std::max(refine_tol, degenerate)) return 0.0;
  return best;
}

double require_elliptic(const OperatorCoefficients& a, int samples) {
  double m = ellipticity_margin(a, samples);
  if (m <= 0.0)
    throw NonElliptic("operator is not elliptic: principal symbol vanishes on "
                      "the unit sphere");
  return m;
}

int class_index(const OperatorCoefficients& a) {
  double mass = a.lower_order_mass();
  double margin = require_elliptic(a);
  for (int l = 1; l < 1 << 20; ++l)
    if (mass < l && margin > 1.0 / l) return l;
  throw BadClassIndex("class_index: no admissible l found");
}

void check_class(const OperatorCoefficients& a, int l) {
  if (l < 1) throw BadClassIndex("class index must be >= 1");
  double mass = a.lower_order_mass();
  double margin = ellipticity_margin(a);
  if (!(mass < l && margin > 1.0 / l))
    throw BadClassIndex("operator does not belong to class l=" +
                        std::to_string(l));
}

double apply_operator_fd(const OperatorCoefficients& a, const ScalarField& f,
                         const std::vector<double>& x, double h) {
  if (h <= 0) throw Error("apply_operator_fd: h must be positive");
  ScalarField guarded = [&f](const std::vector<double>& p) {
    double v = f(p);
    if (!std::isfinite(v))
      throw StencilOutOfDomain("field evaluation failed on a stencil node");
    return v;
  };
  auto level = [&](double hh) {
    double s = 0.0;
    for (const auto& [alpha, v] : a.coeffs()) {
      if (v == 0.0) continue;
      s += v * fd::partial(guarded, x, alpha, hh, 4);
    }
    return s;
  };
  double prev = level(h);
  for (int lvl = 1; lvl < 6; ++lvl) {
    h *= 0.5;
    double cur = level(h);
    if (std::abs(cur - prev) <= 1e-6 * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace fundsol
