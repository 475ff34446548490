#include "fundsol/boundary.hpp"

#include <cctype>
#include <cmath>
#include <functional>

#include "fundsol/errors.hpp"
#include "fundsol/gauss.hpp"

namespace fundsol {

namespace {

struct ShapeSpec {
  std::string name;
  std::vector<double> args;
};

ShapeSpec parse_shape(const std::string& s) {
  ShapeSpec out;
  auto open = s.find('(');
  if (open == std::string::npos) {
    out.name = s;
    return out;
  }
  if (s.back() != ')') throw ParseError("malformed boundary spec: " + s);
  out.name = s.substr(0, open);
  std::string body = s.substr(open + 1, s.size() - open - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t next = body.find(',', pos);
    if (next == std::string::npos) next = body.size();
    try {
      out.args.push_back(std::stod(body.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw ParseError("bad boundary parameter in: " + s);
    }
    pos = next + 1;
  }
  return out;
}

using Curve = std::function<void(double, double*, double*, double*, double*)>;

ParamBoundary build_curve(const std::string& spec, int N, const Curve& gamma) {
  ParamBoundary b;
  b.n = 2;
  b.spec = spec;
  b.N = N;
  b.points.resize(N);
  b.normals.resize(N);
  b.weights.resize(N);
  b.params.resize(N);
  for (int i = 0; i < N; ++i) {
    double t = 2 * M_PI * i / N;
    double x, y, dx, dy;
    gamma(t, &x, &y, &dx, &dy);
    double sp = std::hypot(dx, dy);
    if (sp < 1e-14) throw ParseError("degenerate boundary parametrization");
    b.params[i] = t;
    b.points[i] = {x, y};
    b.normals[i] = {dy / sp, -dx / sp};
    b.weights[i] = sp * 2 * M_PI / N;
    b.circumradius = std::max(b.circumradius, std::hypot(x, y));
  }
  for (int i = 0; i < N; ++i) {
    const auto& p = b.points[i];
    const auto& q = b.points[(i + 1) % N];
    b.h_grid = std::max(b.h_grid, std::hypot(q[0] - p[0], q[1] - p[1]));
  }
  return b;
}

ParamBoundary build_ellipsoid(const std::string& spec, int N, double a,
                              double bb, double c) {
  ParamBoundary b;
  b.n = 3;
  b.spec = spec;
  b.N = N;
  Rule1D theta = gauss_legendre(N, 0.0, M_PI);
  int M = 2 * N;
  double wphi = 2 * M_PI / M;
  for (int i = 0; i < N; ++i) {
    double th = theta.nodes[i];
    double st = std::sin(th), ct = std::cos(th);
    for (int j = 0; j < M; ++j) {
      double ph = wphi * j;
      double cp = std::cos(ph), sp = std::sin(ph);
      std::vector<double> p = {a * st * cp, bb * st * sp, c * ct};
      std::vector<double> gt = {a * ct * cp, bb * ct * sp, -c * st};
      std::vector<double> gp = {-a * st * sp, bb * st * cp, 0.0};
      std::vector<double> cr = {gt[1] * gp[2] - gt[2] * gp[1],
                                gt[2] * gp[0] - gt[0] * gp[2],
                                gt[0] * gp[1] - gt[1] * gp[0]};
      double jac = std::sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]);
      if (jac < 1e-14) continue;
      b.params.push_back(th);
      b.params.push_back(ph);
      b.points.push_back(p);
      b.normals.push_back({cr[0] / jac, cr[1] / jac, cr[2] / jac});
      b.weights.push_back(jac * theta.weights[i] * wphi);
      b.circumradius = std::max(
          b.circumradius, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
      double lt = std::sqrt(gt[0] * gt[0] + gt[1] * gt[1] + gt[2] * gt[2]);
      double lp = std::sqrt(gp[0] * gp[0] + gp[1] * gp[1]);
      b.h_grid = std::max(b.h_grid, std::max(lt * M_PI / N, lp * wphi));
    }
  }
  return b;
}

}  // namespace

ParamBoundary make_boundary(const std::string& spec, int N) {
  if (N < 8) throw ParseError("boundary resolution too small");
  ShapeSpec s = parse_shape(spec);
  if (s.name == "circle") {
    double r = s.args.empty() ? 1.0 : s.args[0];
    if (r <= 0) throw ParseError("circle radius must be positive");
    return build_curve(spec, N,
                       [r](double t, double* x, double* y, double* dx,
                           double* dy) {
                         *x = r * std::cos(t);
                         *y = r * std::sin(t);
                         *dx = -r * std::sin(t);
                         *dy = r * std::cos(t);
                       });
  }
  if (s.name == "ellipse") {
    if (s.args.size() != 2) throw ParseError("ellipse needs (a, b)");
    double a = s.args[0], bb = s.args[1];
    if (a <= 0 || bb <= 0) throw ParseError("ellipse axes must be positive");
    return build_curve(spec, N,
                       [a, bb](double t, double* x, double* y, double* dx,
                               double* dy) {
                         *x = a * std::cos(t);
                         *y = bb * std::sin(t);
                         *dx = -a * std::sin(t);
                         *dy = bb * std::cos(t);
                       });
  }
  if (s.name == "star") {
    if (s.args.size() != 2) throw ParseError("star needs (eps, m)");
    double eps = s.args[0];
    int m = static_cast<int>(std::lround(s.args[1]));
    if (std::abs(eps) >= 1) throw ParseError("star amplitude must be in (-1, 1)");
    return build_curve(spec, N,
                       [eps, m](double t, double* x, double* y, double* dx,
                                double* dy) {
                         double rho = 1 + eps * std::cos(m * t);
                         double drho = -eps * m * std::sin(m * t);
                         double ct = std::cos(t), st = std::sin(t);
                         *x = rho * ct;
                         *y = rho * st;
                         *dx = drho * ct - rho * st;
                         *dy = drho * st + rho * ct;
                       });
  }
  if (s.name == "sphere") {
    double r = s.args.empty() ? 1.0 : s.args[0];
    if (r <= 0) throw ParseError("sphere radius must be positive");
    return build_ellipsoid(spec, N, r, r, r);
  }
  if (s.name == "ellipsoid") {
    if (s.args.size() != 3) throw ParseError("ellipsoid needs (a, b, c)");
    for (double v : s.args)
      if (v <= 0) throw ParseError("ellipsoid axes must be positive");
    return build_ellipsoid(spec, N, s.args[0], s.args[1], s.args[2]);
  }
  throw ParseError("unknown boundary shape: " + spec);
}

ParamBoundary ParamBoundary::refined(int factor) const {
  if (factor < 1) throw Error("refinement factor must be >= 1");
  return make_boundary(spec, N * factor);
}

namespace {

// Recursive-descent parser producing a ScalarField.
class ExprParser {
 public:
  ExprParser(const std::string& src, int n) : s_(src), n_(n) {}

  ScalarField parse() {
    ScalarField f = expr();
    skip_ws();
    if (pos_ != s_.size())
      throw ParseError("unexpected trailing input in expression: " + s_);
    return f;
  }

 private:
  ScalarField expr() {
    ScalarField lhs = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        ScalarField rhs = term();
        lhs = [lhs, rhs](const std::vector<double>& x) {
          return lhs(x) + rhs(x);
        };
      } else if (accept('-')) {
        ScalarField rhs = term();
        lhs = [lhs, rhs](const std::vector<double>& x) {
          return lhs(x) - rhs(x);
        };
      } else {
        return lhs;
      }
    }
  }

  ScalarField term() {
    ScalarField lhs = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        ScalarField rhs = unary();
        lhs = [lhs, rhs](const std::vector<double>& x) {
          return lhs(x) * rhs(x);
        };
      } else if (accept('/')) {
        ScalarField rhs = unary();
        lhs = [lhs, rhs](const std::vector<double>& x) {
          return lhs(x) / rhs(x);
        };
      } else {
        return lhs;
      }
    }
  }

  ScalarField unary() {
    skip_ws();
    if (accept('-')) {
      ScalarField f = unary();
      return [f](const std::vector<double>& x) { return -f(x); };
    }
    accept('+');
    return power();
  }

  ScalarField power() {
    ScalarField base = atom();
    skip_ws();
    if (accept('^')) {
      ScalarField e = unary();
      return [base, e](const std::vector<double>& x) {
        return std::pow(base(x), e(x));
      };
    }
    return base;
  }

  ScalarField atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("truncated expression: " + s_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarField f = expr();
      expect(')');
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return [v](const std::vector<double>&) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_]))))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int coord = coordinate_index(name);
      if (coord >= 0) {
        if (coord >= n_)
          throw ParseError("coordinate " + name +
                           " not available in dimension " +
                           std::to_string(n_));
        return [coord](const std::vector<double>& x) { return x[coord]; };
      }
      if (name == "pi")
        return [](const std::vector<double>&) { return M_PI; };
      skip_ws();
      expect('(');
      ScalarField arg = expr();
      expect(')');
      if (name == "sin")
        return [arg](const std::vector<double>& x) { return std::sin(arg(x)); };
      if (name == "cos")
        return [arg](const std::vector<double>& x) { return std::cos(arg(x)); };
      if (name == "exp")
        return [arg](const std::vector<double>& x) { return std::exp(arg(x)); };
      if (name == "log")
        return [arg](const std::vector<double>& x) { return std::log(arg(x)); };
      if (name == "sqrt")
        return [arg](const std::vector<double>& x) {
          return std::sqrt(arg(x));
        };
      if (name == "abs")
        return [arg](const std::vector<double>& x) { return std::abs(arg(x)); };
      throw ParseError("unknown function in expression: " + name);
    }
    throw ParseError("unexpected character in expression: " +
                     std::string(1, c));
  }

  static int coordinate_index(const std::string& name) {
    if (name == "x" || name == "x1") return 0;
    if (name == "y" || name == "x2") return 1;
    if (name == "z" || name == "x3") return 2;
    return -1;
  }

  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    skip_ws();
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "' in expression: " +
                       s_);
  }

  std::string s_;
  std::size_t pos_ = 0;
  int n_;
};

}  // namespace

ScalarField parse_expression(const std::string& expr, int n) {
  return ExprParser(expr, n).parse();
}

DensitySamples sample_density(const ScalarField& f, const ParamBoundary& b) {
  DensitySamples d;
  d.field = f;
  d.values.reserve(b.size());
  for (const auto& p : b.points) d.values.push_back(f(p));
  return d;
}

DensitySamples sample_density(const std::string& expr,
                              const ParamBoundary& b) {
  return sample_density(parse_expression(expr, b.n), b);
}

}  // namespace fundsol
