#ifndef FUNDSOL_OPERATOR_COEFFICIENTS_HPP
#define FUNDSOL_OPERATOR_COEFFICIENTS_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fundsol/multi_index.hpp"

namespace fundsol {

using ScalarField = std::function<double(const std::vector<double>&)>;

/// Coefficient vector of a constant-coefficient operator of order 2k on R^n:
/// L = sum_{|alpha| <= 2k} a_alpha d^alpha. Immutable after construction.
class OperatorCoefficients {
 public:
  OperatorCoefficients(int n, int k, std::map<MultiIndex, double> coeffs);

  int n() const { return n_; }
  int k() const { return k_; }
  int order() const { return 2 * k_; }
  const std::map<MultiIndex, double>& coeffs() const { return coeffs_; }
  double coeff(const MultiIndex& a) const;

  /// Full symbol P[a](z xi) at complex scale z along the unit vector xi.
  std::complex<double> symbol(std::complex<double> z,
                              const std::vector<double>& xi) const;

  /// Principal symbol P0[a](xi) (real argument).
  double principal_symbol(const std::vector<double>& xi) const;

  /// sum of |a_alpha| over |alpha| <= 2k-1.
  double lower_order_mass() const;

  /// max |a_alpha| over |alpha| = 2k.
  double top_order_scale() const;

  /// Coefficients with a_alpha -> (-1)^{|alpha|} a_alpha (formal adjoint).
  OperatorCoefficients adjoint() const;

  /// Coefficient-wise perturbation (used by smoothness-in-a probes).
  OperatorCoefficients perturbed(const MultiIndex& alpha, double delta) const;

  std::string to_text() const;
  static OperatorCoefficients from_text(std::istream& in);
  static OperatorCoefficients load(const std::string& path);

 private:
  int n_;
  int k_;
  std::map<MultiIndex, double> coeffs_;
};

/// Certified lower estimate of inf_{|xi|=1} |P0[a](xi)|: dense sphere sampling
/// followed by golden-section refinement. Returns 0 when the refined minimum
/// falls below the degeneracy threshold.
double ellipticity_margin(const OperatorCoefficients& a, int samples = 512);

/// Throws NonElliptic when ellipticity_margin(a) == 0; returns the margin.
double require_elliptic(const OperatorCoefficients& a, int samples = 512);

/// Smallest l >= 1 with lower_order_mass < l and margin > 1/l.
int class_index(const OperatorCoefficients& a);

/// Throws BadClassIndex unless a belongs to class l.
void check_class(const OperatorCoefficients& a, int l);

/// L[a] f at x by centered finite differences (order >= 4 per direction),
/// Richardson-halved from h until two levels agree to 1e-6 or 6 levels.
double apply_operator_fd(const OperatorCoefficients& a, const ScalarField& f,
                         const std::vector<double>& x, double h = 1e-2);

}  // namespace fundsol

#endif
