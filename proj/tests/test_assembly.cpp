#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fundsol/assembly.hpp"
#include "fundsol/errors.hpp"

using namespace fundsol;

namespace {

OperatorCoefficients laplacian(int n) {
  std::map<MultiIndex, double> c;
  for (int d = 0; d < n; ++d) {
    MultiIndex a = MultiIndex::zero(n);
    a[d] = 2;
    c[a] = 1.0;
  }
  return OperatorCoefficients(n, 1, c);
}

OperatorCoefficients biharmonic2() {
  return OperatorCoefficients(2, 2,
                              {{MultiIndex{{4, 0}}, 1.0},
                               {MultiIndex{{2, 2}}, 2.0},
                               {MultiIndex{{0, 4}}, 1.0}});
}

}  // namespace

TEST_CASE("3D Laplacian table recovers -1/(4 pi |x|)") {
  BuildOptions opts;
  opts.Jmax = 12;
  opts.target_radius = 2.0;
  auto t = build_table(laplacian(3), opts);
  CHECK(t.R_valid >= 2.0);
  CHECK(t.class_l == 2);
  CHECK(t.parity_checked);
  REQUIRE(!t.f.empty());
  std::vector<double> theta = {0.0, 0.6, 0.8};
  CHECK(synthesize(t.f[0], theta) ==
        doctest::Approx(-1.0 / (4 * M_PI)).epsilon(1e-9));
  CHECK(t.b.empty());
  for (double r : {0.3, 0.9, std::min(1.8, 0.9 * t.R_valid)}) {
    std::vector<double> x = {r * theta[0], r * theta[1], r * theta[2]};
    CHECK(eval_S(t, x) ==
          doctest::Approx(-1.0 / (4 * M_PI * r)).epsilon(1e-8));
    CHECK(eval_S0(t, x) ==
          doctest::Approx(-1.0 / (4 * M_PI * r)).epsilon(1e-8));
  }
}

TEST_CASE("2D Laplacian table recovers log|x| / (2 pi)") {
  BuildOptions opts;
  opts.Jmax = 12;
  opts.target_radius = 3.5;
  auto t = build_table(laplacian(2), opts);
  auto it = t.b.find(MultiIndex{{0, 0}});
  REQUIRE(it != t.b.end());
  CHECK(it->second == doctest::Approx(1.0 / (2 * M_PI)).epsilon(1e-10));
  for (double r : {0.4, 1.0, 1.6}) {
    std::vector<double> x = {r * std::cos(0.7), r * std::sin(0.7)};
    if (r > t.R_valid) continue;
    // S may differ from the textbook kernel by a harmonic polynomial with
    // zero log part, so compare the log coefficient through a radius sweep.
    double s1 = eval_S(t, x);
    std::vector<double> x2 = {2 * x[0], 2 * x[1]};
    if (2 * r > t.R_valid) continue;
    double s2 = eval_S(t, x2);
    double poly1 = 0, poly2 = 0;
    for (const auto& term : t.terms.terms)
      if (!term.log_flag) {
        poly1 += std::pow(r, term.m) * synthesize(term.angular, {std::cos(0.7), std::sin(0.7)});
        poly2 += std::pow(2 * r, term.m) *
                 synthesize(term.angular, {std::cos(0.7), std::sin(0.7)});
      }
    CHECK((s2 - poly2) - (s1 - poly1) ==
          doctest::Approx(std::log(2.0) / (2 * M_PI)).epsilon(1e-8));
  }
}

TEST_CASE("biharmonic table log coefficients") {
  auto t = build_table(biharmonic2(), 12);
  CHECK(t.b.at(MultiIndex{{2, 0}}) ==
        doctest::Approx(1.0 / (8 * M_PI)).epsilon(1e-8));
  CHECK(t.b.at(MultiIndex{{0, 2}}) ==
        doctest::Approx(1.0 / (8 * M_PI)).epsilon(1e-8));
  auto it = t.b.find(MultiIndex{{1, 1}});
  if (it != t.b.end()) CHECK(std::abs(it->second) < 1e-8);
}

TEST_CASE("parity of the f coefficients") {
  for (auto op : {laplacian(2), biharmonic2()}) {
    auto t = build_table(op, 10);
    for (std::size_t j = 0; j < t.f.size(); ++j) {
      CHECK(t.f[j].off_parity_mass(static_cast<int>(j % 2)) < 1e-10);
    }
  }
}

TEST_CASE("W series matches the direct W0 integral in 3D") {
  auto a = laplacian(3);
  auto quad = build_quadrature(3, 24);
  auto series = build_W_series(a, 10, 8);
  for (auto x : {std::vector<double>{0.3, 0.1, 0.2},
                 std::vector<double>{0.0, 0.5, -0.1}}) {
    double direct = compute_W0(a, x, quad);
    CHECK(series.eval(x) == doctest::Approx(direct).epsilon(1e-8));
  }
}

TEST_CASE("W0 on the unit sphere for the 3D Laplacian") {
  auto a = laplacian(3);
  auto quad = build_quadrature(3, 24);
  double w = compute_W0(a, {0.0, 0.0, 1.0}, quad);
  CHECK(w == doctest::Approx(-1.0 / (96 * M_PI)).epsilon(1e-5));
}

TEST_CASE("W series matches the direct W1 + W2 integrals in 2D") {
  auto a = laplacian(2);
  auto series = build_W_series(a, 10, 8);
  for (auto x : {std::vector<double>{0.4, 0.2},
                 std::vector<double>{-0.3, 0.5}}) {
    double direct = compute_W1(a, x) + compute_W2(a, x);
    CHECK(series.eval(x) == doctest::Approx(direct).epsilon(1e-7));
  }
}

TEST_CASE("evaluation outside the validity radius throws") {
  auto t = build_table(laplacian(2), 10);
  std::vector<double> far = {2 * t.R_valid, 0.0};
  CHECK_THROWS_AS(eval_S(t, far), OutsideValidity);
}

TEST_CASE("remainder bound is monotone and controls R_valid") {
  auto t = build_table(laplacian(2), 10);
  CHECK(t.R_valid > 0.0);
  CHECK(t.remainder_bound(0.5 * t.R_valid) <=
        t.remainder_bound(t.R_valid));
  CHECK(t.remainder_bound(t.R_valid) <= 1e-9);
}

TEST_CASE("target radius raises Jmax until the bound covers it") {
  BuildOptions opts;
  opts.Jmax = 10;
  opts.target_radius = 4.5;
  auto t = build_table(laplacian(2), opts);
  CHECK(t.R_valid >= 4.5);
}

TEST_CASE("structural derivative of S matches finite differences") {
  BuildOptions opts;
  opts.Jmax = 10;
  opts.target_radius = 1.2;
  auto t = build_table(biharmonic2(), opts);
  std::vector<double> x = {0.5, 0.3};
  for (auto beta : {MultiIndex{{1, 0}}, MultiIndex{{0, 1}},
                    MultiIndex{{2, 1}}}) {
    double h = 1e-4;
    double fd = 0;
    if (beta.order() == 1) {
      int ax = beta[0] == 1 ? 0 : 1;
      auto xp = x, xm = x;
      xp[ax] += h;
      xm[ax] -= h;
      fd = (eval_S(t, xp) - eval_S(t, xm)) / (2 * h);
      CHECK(eval_S_derivative(t, x, beta) ==
            doctest::Approx(fd).epsilon(1e-6));
    } else {
      // d^2/dx^2 d/dy via nested central differences.
      auto sdy = [&](std::vector<double> p) {
        auto pp = p, pm = p;
        pp[1] += h;
        pm[1] -= h;
        return (eval_S(t, pp) - eval_S(t, pm)) / (2 * h);
      };
      auto xp = x, xm = x;
      xp[0] += h;
      xm[0] -= h;
      fd = (sdy(xp) - 2 * sdy(x) + sdy(xm)) / (h * h);
      CHECK(eval_S_derivative(t, x, beta) ==
            doctest::Approx(fd).epsilon(1e-4));
    }
  }
}
