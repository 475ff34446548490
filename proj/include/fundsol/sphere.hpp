#ifndef FUNDSOL_SPHERE_HPP
#define FUNDSOL_SPHERE_HPP

#include <functional>
#include <vector>

#include "fundsol/operator_coefficients.hpp"

namespace fundsol {

/// Quadrature on the unit sphere of R^n, n in {2,3}. The node set is
/// antipodally symmetric: nodes[antipode[i]] is the exact floating-point
/// negation of nodes[i].
struct SphereQuadrature {
  int n = 0;
  int order = 0;
  std::vector<std::vector<double>> nodes;
  std::vector<double> weights;
  std::vector<int> antipode;

  double integrate(
      const std::function<double(const std::vector<double>&)>& f) const {
    double s = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n=2: uniform trapezoid with 2*order nodes. n=3: Gauss-Legendre in the
/// polar cosine times trapezoid in azimuth, 2*order azimuthal nodes and
/// order polar nodes. Exact (1e-12) on spherical polynomials up to the
/// stated order.
SphereQuadrature build_quadrature(int n, int order);

/// Number of orthonormal real harmonics of degree <= L: 2L+1 for n=2,
/// (L+1)^2 for n=3.
int harmonic_basis_size(int n, int L);

/// Degree l of the basis element with the given flat index.
int harmonic_degree(int n, int idx);

/// All basis values at a unit vector, flat-indexed.
/// n=2 layout: [1/sqrt(2pi), cos(phi)/sqrt(pi), sin(phi)/sqrt(pi),
///              cos(2phi)/sqrt(pi), ...].
/// n=3 layout: degree blocks l^2..(l+1)^2-1, within a block
///             [m=0, cos(1), sin(1), ..., cos(l), sin(l)].
/// Evaluation is by recurrences in the Cartesian components only, so the
/// value at -theta is the exact negation (even l: identity) of the value
/// at theta.
std::vector<double> harmonic_basis(int n, int L,
                                   const std::vector<double>& theta);

/// Truncated expansion in the orthonormal real harmonic basis.
struct HarmonicExpansion {
  int n = 0;
  int L = 0;
  std::vector<double> coeffs;

  HarmonicExpansion() = default;
  HarmonicExpansion(int n_, int L_)
      : n(n_), L(L_), coeffs(harmonic_basis_size(n_, L_), 0.0) {}

  double eval(const std::vector<double>& theta) const;
  double norm() const;
  /// l2 mass carried by degrees with l % 2 != parity (parity in {0,1}).
  double off_parity_mass(int parity) const;
  /// l2 mass at the top degree L.
  double top_degree_mass() const;
  bool is_zero(double tol = 0.0) const;
  void drop_small(double tol);

  HarmonicExpansion& operator+=(const HarmonicExpansion& o);
  HarmonicExpansion& operator*=(double c);
};

/// Coefficients by discrete inner products on the quadrature. Throws
/// InvariantViolated when the quadrature order is below 2L (aliasing).
HarmonicExpansion forward_transform(const SphereQuadrature& q,
                                    const std::vector<double>& samples, int L);

double synthesize(const HarmonicExpansion& e, const std::vector<double>& theta);

/// Tangential (Guenter) derivative of an ambient extension at a point of
/// the sphere: d_j G(theta) - theta_j sum_l theta_l d_l G(theta).
double gunter_derivative(const ScalarField& extension,
                         const std::vector<double>& theta, int axis);

/// Tangential derivative of a band-limited expansion along axis h,
/// returned at band L+1. n=2 is spectrally exact; n=3 differentiates the
/// synthesized field along great circles and re-projects.
HarmonicExpansion gunter_derivative(const HarmonicExpansion& g, int axis);

/// theta_h * g as an expansion at band L+1.
HarmonicExpansion multiply_by_coordinate(const HarmonicExpansion& g, int axis);

/// Orthogonal matrix T with T^t theta = eta, entries
/// delta_jk + 2 theta_j eta_k - (theta+eta)_j (theta+eta)_k / (1+theta.eta).
/// Requires theta.eta > 1e-10 (half sphere around eta).
std::vector<std::vector<double>> rotation_map(const std::vector<double>& eta,
                                              const std::vector<double>& theta);

/// Zonal kernel data for Funk-Hecke multipliers. The kernel is
/// psi(u) = psi_abs(|u|) * sgn(u)^parity, i.e. psi(-u) = (-1)^parity psi(u);
/// psi_abs is supplied on (0,1] and may have an integrable log singularity
/// at 0 (singular flag grades the quadrature toward u = 0).
struct ZonalKernel {
  std::function<double(double)> psi_abs;
  int parity = 0;
  bool singular = false;
};

/// Multipliers lambda_l, l = 0..L, of the operator
/// (K f)(theta) = integral psi(theta.xi) f(xi) dsigma_xi
/// acting diagonally on degree-l harmonics. Wrong-parity entries are exact
/// zeros by symmetry.
std::vector<double> funk_hecke_multipliers(int n, int L, const ZonalKernel& k);

/// Expansion with coefficients scaled degree-wise by the multipliers.
HarmonicExpansion apply_multipliers(const HarmonicExpansion& g,
                                    const std::vector<double>& lambda);

}  // namespace fundsol

#endif
