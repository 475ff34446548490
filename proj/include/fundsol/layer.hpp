#ifndef FUNDSOL_LAYER_HPP
#define FUNDSOL_LAYER_HPP

#include <array>
#include <string>
#include <vector>

#include "fundsol/boundary.hpp"
#include "fundsol/kernel.hpp"
#include "fundsol/multi_index.hpp"

namespace fundsol {

/// Nystrom single-layer potential sum kernel(x - y_i) mu_i w_i at an
/// off-boundary point (dist > h_grid, else TooCloseToBoundary).
double single_layer(const KernelHandle& kernel, const ParamBoundary& b,
                    const DensitySamples& mu, const std::vector<double>& x);

/// Same sum with the differentiated kernel.
double derivative_potential(const KernelHandle& kernel, const ParamBoundary& b,
                            const DensitySamples& mu,
                            const std::vector<double>& x,
                            const MultiIndex& beta);

struct TraceResult {
  double value = 0;
  double error_estimate = 0;
};

/// One-sided boundary limit of the derivative potential at a node, by
/// Richardson extrapolation along the normal line with geometrically shrinking
/// offsets delta_i = delta_0 / 2^i, delta_0 = 5 h_grid. The boundary and
/// density are refined with the offset so the Nystrom error stays well below
/// the extrapolation increments.
TraceResult trace_extrapolate(const KernelHandle& kernel,
                              const ParamBoundary& b, const DensitySamples& mu,
                              int node_index, bool interior,
                              const MultiIndex& beta, double tol = 1e-3);

/// Interior and exterior traces at every node, computed with shared refined
/// boundaries and a thread pool. Result is [node][0 = interior, 1 = exterior].
std::vector<std::array<double, 2>> boundary_traces(const KernelHandle& kernel,
                                                   const ParamBoundary& b,
                                                   const DensitySamples& mu,
                                                   const MultiIndex& beta,
                                                   double tol = 1e-3);

struct JumpRow {
  double t = 0;
  std::vector<double> x;
  std::vector<double> nu;
  double observed = 0;
  double predicted = 0;
  double rel_error = 0;
};

struct JumpReport {
  std::vector<JumpRow> rows;
  double max_rel_error = 0;
  double median_rel_error = 0;
};

/// Per-node comparison of the observed trace jump (interior minus exterior)
/// of the order 2k-1 derivative potential against the closed-form value
/// -nu^beta mu / P0(nu).
JumpReport jump_report(const FundamentalSolutionTable& table,
                       const ParamBoundary& b, const DensitySamples& mu,
                       const MultiIndex& beta);

/// CSV rendering with columns t, x, nu, observed, predicted, rel_error.
std::string jump_csv(const JumpReport& report, int n);

}  // namespace fundsol

#endif
