#ifndef FUNDSOL_KERNEL_HPP
#define FUNDSOL_KERNEL_HPP

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fundsol/assembly.hpp"
#include "fundsol/multi_index.hpp"

namespace fundsol {

/// Evaluatable convolution kernel x -> K(x) with optional derivative maps.
/// Either backed by a FundamentalSolutionTable or by a closed-form reference
/// kernel, so the layer-potential machinery can be exercised against
/// textbook kernels independently of the assembly.
struct KernelHandle {
  int n = 0;
  double validity = std::numeric_limits<double>::infinity();
  ScalarField value;
  /// Empty when no derivatives are available; throws MissingDerivative for
  /// orders that were not prepared.
  std::function<double(const std::vector<double>&, const MultiIndex&)> deriv;

  bool has_derivatives() const { return static_cast<bool>(deriv); }
};

/// Table-backed kernel with structural derivatives precomputed for all
/// |beta| <= max_deriv_order.
KernelHandle kernel_from_table(const FundamentalSolutionTable& t,
                               int max_deriv_order);

/// Closed-form reference kernel by name: laplace2d, laplace3d, biharmonic2d,
/// yukawa2d(kappa), yukawa3d(kappa), anisotropic2d(a11,a12,a22).
/// First derivatives are provided for laplace2d and laplace3d.
KernelHandle kernel_from_reference(const std::string& name);

}  // namespace fundsol

#endif
