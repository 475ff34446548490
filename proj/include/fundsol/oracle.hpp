#ifndef FUNDSOL_ORACLE_HPP
#define FUNDSOL_ORACLE_HPP

#include <string>
#include <vector>

#include "fundsol/kernel.hpp"
#include "fundsol/operator_coefficients.hpp"

namespace fundsol {

/// Smooth compactly supported bump exp(1/(|u|^2 - 1)) with u scaled to the
/// support ball.
struct TestFunction {
  std::vector<double> center;
  double R_supp = 1.0;

  double operator()(const std::vector<double>& x) const;
  ScalarField as_field() const;
};

/// Relative defect of the distributional identity
/// integral K(y) (L^t phi)(y) dy = phi(0), by graded polar quadrature around
/// the kernel singularity. `grid` controls the radial resolution.
double distributional_delta_test(const KernelHandle& kernel,
                                 const OperatorCoefficients& a,
                                 const TestFunction& phi, int grid);

/// Reference kernel value at x, by name (see kernel_from_reference).
double closed_form_reference(const std::string& name,
                             const std::vector<double>& x);

/// Max over sampled annulus points of |L[a] kernel| via finite differences,
/// normalized by a local kernel scale (operator coefficient mass times a
/// probe of |kernel| divided by r^{2k}).
double residual_scan(const KernelHandle& kernel, const OperatorCoefficients& a,
                     double r_min, double r_max, int count);

/// Modified Bessel function K_0: small-argument series below 2, integral
/// representation on a truncated cosh substitution above.
double bessel_k0(double x);
/// K_0 with first and second derivatives, each from the analytic branch
/// formulas (no finite differences), for the ODE self-check.
void bessel_k0_derivs(double x, double* k0, double* dk0, double* d2k0);

}  // namespace fundsol

#endif
