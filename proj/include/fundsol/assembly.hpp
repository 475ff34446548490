#ifndef FUNDSOL_ASSEMBLY_HPP
#define FUNDSOL_ASSEMBLY_HPP

#include <map>
#include <vector>

#include "fundsol/contour.hpp"
#include "fundsol/operator_coefficients.hpp"
#include "fundsol/radial_terms.hpp"
#include "fundsol/sphere.hpp"

namespace fundsol {

struct BuildOptions {
  int Jmax = 40;
  /// 0 selects the per-dimension default (24 for n=2, 16 for n=3); the band
  /// is raised adaptively while the top-degree mass of the angular data
  /// exceeds 1e-10 of its norm.
  int L = 0;
  /// When positive, Jmax is raised (cap 120) until R_valid covers this
  /// radius.
  double target_radius = 0;
};

/// Evaluatable series form of the fundamental solution:
/// S(x) = sum_j |x|^{2k-n+j} f_j(x/|x|) + log|x| sum_alpha b_alpha x^alpha.
/// `terms` is the same object in radial-term form and is what eval_S sums;
/// f and b are the reporting view extracted from it.
struct FundamentalSolutionTable {
  OperatorCoefficients a;
  int Jmax = 0;
  int L = 0;
  int class_l = 1;
  double R_valid = 0;
  bool parity_checked = false;
  RadialTermSum terms;
  std::vector<HarmonicExpansion> f;
  std::map<MultiIndex, double> b;

  explicit FundamentalSolutionTable(OperatorCoefficients op) : a(std::move(op)) {}

  /// Conservative bound on the dropped series tail at radius r; monotone
  /// increasing in r. Deliberately crude (class-l coefficient bound times
  /// overestimates of the kernel integrals and Laplacian factors).
  double remainder_bound(double r) const;
};

FundamentalSolutionTable build_table(const OperatorCoefficients& a,
                                     const BuildOptions& opts = {});
FundamentalSolutionTable build_table(const OperatorCoefficients& a, int Jmax);

double eval_S(const FundamentalSolutionTable& t, const std::vector<double>& x);
double eval_S0(const FundamentalSolutionTable& t, const std::vector<double>& x);
/// Structural term-by-term derivative, |beta| <= 2k-1.
double eval_S_derivative(const FundamentalSolutionTable& t,
                         const std::vector<double>& x, const MultiIndex& beta);

/// Direct sphere-integral evaluation of W0 (n odd). Low-accuracy cross-check
/// of the series assembly, not a production path.
double compute_W0(const OperatorCoefficients& a, const std::vector<double>& x,
                  const SphereQuadrature& quad);
/// W0 as a reusable field with the plane-wave series precomputed per node.
ScalarField make_W0_field(const OperatorCoefficients& a,
                          const SphereQuadrature& quad);

/// Direct evaluations of W1 and W2 (n even, n=2 implemented).
double compute_W1(const OperatorCoefficients& a, const std::vector<double>& x);
double compute_W2(const OperatorCoefficients& a, const std::vector<double>& x);

/// The pre-Laplacian series (W0 for n odd, W1 + W2 for n even) in radial-term
/// form at fixed band L. Exposed so the series route can be checked against
/// the direct integrals above.
RadialTermSum build_W_series(const OperatorCoefficients& a, int Jmax, int L);

}  // namespace fundsol

#endif
