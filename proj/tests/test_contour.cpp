#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fundsol/contour.hpp"
#include "fundsol/errors.hpp"

using namespace fundsol;

namespace {

OperatorCoefficients laplacian2() {
  return OperatorCoefficients(
      2, 1, {{MultiIndex{{2, 0}}, 1.0}, {MultiIndex{{0, 2}}, 1.0}});
}

OperatorCoefficients helmholtz_minus() {
  // Laplacian minus identity.
  return OperatorCoefficients(2, 1,
                              {{MultiIndex{{2, 0}}, 1.0},
                               {MultiIndex{{0, 2}}, 1.0},
                               {MultiIndex{{0, 0}}, -1.0}});
}

}  // namespace

TEST_CASE("contour radius clears the symbol zeros") {
  CHECK(contour_radius(laplacian2()) == doctest::Approx(2.0));
  // mass 1, margin 1: radius 2 (1 + 1/1) = 4.
  CHECK(contour_radius(helmholtz_minus()) == doctest::Approx(4.0));
}

TEST_CASE("plane-wave profile for the Laplacian is s^2/2") {
  auto a = laplacian2();
  auto c = ContourSpec::for_operator(a);
  std::vector<double> xi = {1.0, 0.0};
  double v1 = v_eval(a, {1.0, 0.0}, xi, 0.0, c);
  CHECK(v1 == doctest::Approx(0.5).epsilon(1e-10));
  double vh = v_eval(a, {0.3, 0.4}, xi, -0.2, c);
  CHECK(vh == doctest::Approx(0.5 * 0.5 * 0.5).epsilon(1e-10));
}

TEST_CASE("plane-wave profile for laplacian minus one is cosh minus one") {
  auto a = helmholtz_minus();
  auto c = ContourSpec::for_operator(a);
  std::vector<double> xi = {0.0, 1.0};
  double v1 = v_eval(a, {0.0, 1.0}, xi, 0.0, c);
  CHECK(v1 == doctest::Approx(std::cosh(1.0) - 1.0).epsilon(1e-10));
}

TEST_CASE("series coefficients: vanishing, leading, and known values") {
  auto a = helmholtz_minus();
  auto c = ContourSpec::for_operator(a);
  std::vector<double> xi = {1.0, 0.0};
  auto pw = series_coefficients(a, xi, 8, c);
  CHECK(pw.two_k == 2);
  CHECK(pw.coeffs[0] == 0.0);
  CHECK(pw.coeffs[1] == 0.0);
  CHECK(pw.coeffs[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pw.coeffs[3] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(pw.coeffs[4] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pw.coeffs[6] == doctest::Approx(1.0).epsilon(1e-10));
  // w reproduces (cosh(s) - 1)/s^2.
  // Truncation at J = 8 leaves a tail of order s^8/10!.
  double s = 0.7;
  CHECK(pw.w(s) ==
        doctest::Approx((std::cosh(s) - 1) / (s * s)).epsilon(1e-6));
  CHECK(pw.v(s) == doctest::Approx(std::cosh(s) - 1).epsilon(1e-6));
}

TEST_CASE("coefficients are independent of the contour radius") {
  auto a = helmholtz_minus();
  std::vector<double> xi = {0.6, 0.8};
  ContourSpec c1;
  c1.radius = contour_radius(a);
  ContourSpec c2;
  c2.radius = 2 * c1.radius;
  auto p1 = series_coefficients(a, xi, 6, c1);
  auto p2 = series_coefficients(a, xi, 6, c2);
  for (int j = 0; j <= 6; ++j) {
    double scale = std::max(1.0, std::abs(p1.coeffs[j]));
    CHECK(std::abs(p1.coeffs[j] - p2.coeffs[j]) / scale < 1e-10);
  }
}

TEST_CASE("truncation bound examples") {
  CHECK(truncation_bound(1, 1, 1) == doctest::Approx(1.0));
  CHECK(truncation_bound(1, 2, 1) == doctest::Approx(2.0));
  CHECK(truncation_bound(2, 3, 1) == doctest::Approx(50.0));
}

TEST_CASE("tail bound dominates the next coefficient") {
  auto a = helmholtz_minus();
  auto c = ContourSpec::for_operator(a);
  auto pw = series_coefficients(a, {1.0, 0.0}, 8, c);
  // a_9 = 0 < tail bound.
  CHECK(pw.tail_bound >= 0.0);
  auto pw2 = series_coefficients(a, {1.0, 0.0}, 9, c);
  CHECK(std::abs(pw2.coeffs[9]) <= pw.tail_bound + 1e-12);
}

TEST_CASE("contour through a symbol zero is rejected") {
  auto a = helmholtz_minus();
  ContourSpec c;
  c.radius = 1.0;  // P(zeta xi) = zeta^2 - 1 vanishes on |zeta| = 1
  CHECK_THROWS_AS(v_eval(a, {1.0, 0.0}, {1.0, 0.0}, 0.0, c),
                  ContourTooSmall);
}
