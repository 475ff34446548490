#include "fundsol/layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include "fundsol/errors.hpp"
#include "fundsol/radial_terms.hpp"

namespace fundsol {

KernelHandle kernel_from_table(const FundamentalSolutionTable& t,
                               int max_deriv_order) {
  auto tbl = std::make_shared<FundamentalSolutionTable>(t);
  auto dmap = std::make_shared<std::map<MultiIndex, RadialTermSum>>();
  for (const MultiIndex& beta :
       multi_indices_up_to(t.a.n(), max_deriv_order)) {
    if (beta.order() == 0) continue;
    RadialTermSum d = derivative(tbl->terms, beta);
    d.prune(0.0);
    (*dmap)[beta] = std::move(d);
  }
  double r_valid = t.R_valid;
  KernelHandle k;
  k.n = t.a.n();
  k.validity = r_valid;
  k.value = [tbl](const std::vector<double>& x) { return eval_S(*tbl, x); };
  k.deriv = [tbl, dmap, r_valid](const std::vector<double>& x,
                                 const MultiIndex& beta) {
    if (beta.order() == 0) return eval_S(*tbl, x);
    auto it = dmap->find(beta);
    if (it == dmap->end())
      throw MissingDerivative("table kernel: derivative " + beta.str() +
                              " was not prepared");
    double r2 = 0;
    for (double c : x) r2 += c * c;
    if (std::sqrt(r2) > r_valid)
      throw OutsideValidity("table kernel derivative outside validity radius");
    return it->second.eval(x);
  };
  return k;
}

namespace {

double nystrom_sum(const KernelHandle& kernel, const ParamBoundary& b,
                   const DensitySamples& mu, const std::vector<double>& x,
                   const MultiIndex& beta, bool check_distance) {
  if (mu.values.size() != b.size())
    throw Error("density sample count does not match boundary");
  int n = b.n;
  bool use_deriv = beta.order() > 0;
  if (use_deriv && !kernel.has_derivatives())
    throw MissingDerivative("kernel provides no derivatives");
  if (check_distance) {
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& y : b.points) {
      double d = 0;
      for (int i = 0; i < n; ++i) d += (x[i] - y[i]) * (x[i] - y[i]);
      dmin = std::min(dmin, d);
    }
    if (std::sqrt(dmin) <= b.h_grid)
      throw TooCloseToBoundary(
          "evaluation point closer to the boundary than the grid spacing");
  }
  double s = 0;
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (int d = 0; d < n; ++d) diff[d] = x[d] - b.points[i][d];
    double kv = use_deriv ? kernel.deriv(diff, beta) : kernel.value(diff);
    s += kv * mu.values[i] * b.weights[i];
  }
  return s;
}

/// Trigonometric interpolation of curve samples onto a refined uniform grid.
std::vector<double> trig_resample(const std::vector<double>& vals,
                                  const std::vector<double>& params_out) {
  int N = static_cast<int>(vals.size());
  int half = N / 2;
  std::vector<double> a(half + 1, 0.0), bb(half + 1, 0.0);
  for (int j = 0; j < N; ++j) {
    double t = 2 * M_PI * j / N;
    for (int k = 0; k <= half; ++k) {
      a[k] += vals[j] * std::cos(k * t);
      bb[k] += vals[j] * std::sin(k * t);
    }
  }
  for (int k = 0; k <= half; ++k) {
    double norm = (k == 0 || (2 * k == N)) ? 1.0 / N : 2.0 / N;
    a[k] *= norm;
    bb[k] *= norm;
  }
  if (2 * half == N) bb[half] = 0;
  std::vector<double> out;
  out.reserve(params_out.size());
  for (double t : params_out) {
    double v = 0;
    for (int k = 0; k <= half; ++k)
      v += a[k] * std::cos(k * t) + bb[k] * std::sin(k * t);
    out.push_back(v);
  }
  return out;
}

struct FineLevel {
  ParamBoundary boundary;
  DensitySamples density;
};

/// Refined boundaries and densities shared by every trace at one resolution.
class FineCache {
 public:
  FineCache(const ParamBoundary& b, const DensitySamples& mu)
      : base_(b), mu_(mu) {}

  const FineLevel& level(int factor) {
    auto it = levels_.find(factor);
    if (it != levels_.end()) return it->second;
    FineLevel lvl;
    if (factor == 1) {
      lvl.boundary = base_;
      lvl.density = mu_;
    } else {
      lvl.boundary = base_.refined(factor);
      if (mu_.field) {
        lvl.density = sample_density(mu_.field, lvl.boundary);
      } else if (base_.n == 2) {
        lvl.density.values = trig_resample(mu_.values, lvl.boundary.params);
      } else {
        throw Error(
            "surface densities need an analytic expression for refinement");
      }
    }
    return levels_.emplace(factor, std::move(lvl)).first->second;
  }

  /// Build every level that the six extrapolation offsets will request, so
  /// concurrent readers never mutate the cache.
  void prebuild() {
    for (int f = 1; f <= 32; f *= 2) level(f);
  }

 private:
  const ParamBoundary& base_;
  const DensitySamples& mu_;
  std::map<int, FineLevel> levels_;
};

int refinement_factor(double delta, double h_grid) {
  int f = 1;
  while (f < 32 && delta < 4 * h_grid / f) f *= 2;
  return f;
}

TraceResult trace_with_cache(const KernelHandle& kernel, FineCache& cache,
                             const ParamBoundary& b, int node_index,
                             bool interior, const MultiIndex& beta,
                             double tol) {
  if (node_index < 0 || node_index >= static_cast<int>(b.size()))
    throw Error("trace node index out of range");
  const std::vector<double>& x0 = b.points[node_index];
  const std::vector<double>& nu = b.normals[node_index];
  double sign = interior ? -1.0 : 1.0;
  double delta0 = 5 * b.h_grid;
  constexpr int kLevels = 6;
  // Richardson tableau for step ratio 2; T[i][m] eliminates powers up to
  // delta^m from the samples at offsets delta_0 / 2^i.
  double T[kLevels][kLevels];
  for (int i = 0; i < kLevels; ++i) {
    double delta = delta0 / (1 << i);
    const FineLevel& lvl = cache.level(refinement_factor(delta, b.h_grid));
    std::vector<double> x(b.n);
    for (int d = 0; d < b.n; ++d) x[d] = x0[d] + sign * delta * nu[d];
    T[i][0] = nystrom_sum(kernel, lvl.boundary, lvl.density, x, beta, false);
    for (int m = 1; m <= i; ++m) {
      double denom = std::pow(2.0, m) - 1.0;
      T[i][m] = T[i][m - 1] + (T[i][m - 1] - T[i - 1][m - 1]) / denom;
    }
  }
  TraceResult out;
  out.value = T[kLevels - 1][kLevels - 1];
  out.error_estimate =
      std::abs(T[kLevels - 1][kLevels - 1] - T[kLevels - 2][kLevels - 2]);
  if (out.error_estimate > 10 * tol)
    throw NoConvergence("trace extrapolation did not settle: increment " +
                        std::to_string(out.error_estimate));
  return out;
}

}  // namespace

double single_layer(const KernelHandle& kernel, const ParamBoundary& b,
                    const DensitySamples& mu, const std::vector<double>& x) {
  return nystrom_sum(kernel, b, mu, x, MultiIndex::zero(b.n), true);
}

double derivative_potential(const KernelHandle& kernel, const ParamBoundary& b,
                            const DensitySamples& mu,
                            const std::vector<double>& x,
                            const MultiIndex& beta) {
  return nystrom_sum(kernel, b, mu, x, beta, true);
}

TraceResult trace_extrapolate(const KernelHandle& kernel,
                              const ParamBoundary& b, const DensitySamples& mu,
                              int node_index, bool interior,
                              const MultiIndex& beta, double tol) {
  FineCache cache(b, mu);
  return trace_with_cache(kernel, cache, b, node_index, interior, beta, tol);
}

std::vector<std::array<double, 2>> boundary_traces(const KernelHandle& kernel,
                                                   const ParamBoundary& b,
                                                   const DensitySamples& mu,
                                                   const MultiIndex& beta,
                                                   double tol) {
  FineCache cache(b, mu);
  cache.prebuild();
  std::size_t count = b.size();
  std::vector<std::array<double, 2>> out(count);
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::max(1u, std::min(hw, 8u));
  nthreads = std::min(nthreads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < count; i += nthreads) {
          out[i][0] = trace_with_cache(kernel, cache, b, static_cast<int>(i),
                                       true, beta, tol)
                          .value;
          out[i][1] = trace_with_cache(kernel, cache, b, static_cast<int>(i),
                                       false, beta, tol)
                          .value;
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

JumpReport jump_report(const FundamentalSolutionTable& table,
                       const ParamBoundary& b, const DensitySamples& mu,
                       const MultiIndex& beta) {
  int k = table.a.k();
  if (beta.order() != 2 * k - 1)
    throw Error("jump_report: derivative order must be 2k - 1");
  double reach = 2 * b.circumradius + 5 * b.h_grid;
  if (table.R_valid < reach)
    throw OutsideValidity(
        "table validity radius " + std::to_string(table.R_valid) +
        " does not cover the boundary diameter " + std::to_string(reach));
  KernelHandle kernel = kernel_from_table(table, 2 * k - 1);
  auto traces = boundary_traces(kernel, b, mu, beta);

  JumpReport rep;
  rep.rows.resize(b.size());
  double max_abs_pred = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    JumpRow& row = rep.rows[i];
    row.t = (b.n == 2) ? b.params[i] : b.params[2 * i];
    row.x = b.points[i];
    row.nu = b.normals[i];
    row.observed = traces[i][0] - traces[i][1];
    double nb = 1;
    for (int d = 0; d < b.n; ++d)
      nb *= std::pow(b.normals[i][d], beta[d]);
    row.predicted =
        -nb * mu.values[i] / table.a.principal_symbol(b.normals[i]);
    max_abs_pred = std::max(max_abs_pred, std::abs(row.predicted));
  }
  std::vector<double> rels;
  rels.reserve(b.size());
  for (JumpRow& row : rep.rows) {
    double denom =
        std::max({std::abs(row.predicted), 0.1 * max_abs_pred, 1e-14});
    row.rel_error = std::abs(row.observed - row.predicted) / denom;
    rels.push_back(row.rel_error);
    rep.max_rel_error = std::max(rep.max_rel_error, row.rel_error);
  }
  std::sort(rels.begin(), rels.end());
  if (!rels.empty()) rep.median_rel_error = rels[rels.size() / 2];
  return rep;
}

std::string jump_csv(const JumpReport& report, int n) {
  std::ostringstream out;
  out.precision(12);
  out << "t";
  for (int d = 1; d <= n; ++d) out << ",x" << d;
  for (int d = 1; d <= n; ++d) out << ",nu" << d;
  out << ",observed,predicted,rel_error\n";
  for (const JumpRow& row : report.rows) {
    out << row.t;
    for (int d = 0; d < n; ++d) out << "," << row.x[d];
    for (int d = 0; d < n; ++d) out << "," << row.nu[d];
    out << "," << row.observed << "," << row.predicted << ","
        << row.rel_error << "\n";
  }
  return out.str();
}

}  // namespace fundsol
