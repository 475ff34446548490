#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fundsol/assembly.hpp"
#include "fundsol/boundary.hpp"
#include "fundsol/contour.hpp"
#include "fundsol/errors.hpp"
#include "fundsol/kernel.hpp"
#include "fundsol/layer.hpp"
#include "fundsol/oracle.hpp"
#include "fundsol/table_io.hpp"

namespace {

using namespace fundsol;

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + out_path);
  out << text;
}

struct GridAxis {
  double lo = 0, hi = 0;
  int count = 0;
};

std::vector<GridAxis> parse_grid(const std::string& spec, int n) {
  std::vector<GridAxis> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    GridAxis ax;
    if (std::sscanf(part.c_str(), "%lf:%lf:%d", &ax.lo, &ax.hi, &ax.count) !=
        3)
      throw ParseError("grid axis must be min:max:count, got: " + part);
    if (ax.count < 2) throw ParseError("grid resolution must be >= 2");
    axes.push_back(ax);
  }
  if (static_cast<int>(axes.size()) != n)
    throw ParseError("grid spec needs " + std::to_string(n) + " axes");
  return axes;
}

int cmd_check(const std::string& op_path) {
  OperatorCoefficients a = OperatorCoefficients::load(op_path);
  double margin = ellipticity_margin(a);
  std::cout << "n " << a.n() << "\n";
  std::cout << "k " << a.k() << "\n";
  std::cout << std::setprecision(12);
  std::cout << "margin " << margin << "\n";
  if (margin <= 0) throw NonElliptic("principal symbol vanishes on the sphere");
  std::cout << "class " << class_index(a) << "\n";
  std::cout << "contour_radius " << contour_radius(a) << "\n";
  std::cout << "elliptic yes\n";
  return 0;
}

int cmd_build(const std::string& op_path, int jmax, double target_radius,
              const std::string& out_path) {
  OperatorCoefficients a = OperatorCoefficients::load(op_path);
  BuildOptions opts;
  opts.Jmax = jmax;
  opts.target_radius = target_radius;
  FundamentalSolutionTable t = build_table(a, opts);
  write_output(out_path, table_to_json(t) + "\n");
  return 0;
}

int cmd_eval(const std::string& table_path, const std::string& grid_spec,
             const std::string& out_path, const std::string& format) {
  FundamentalSolutionTable t = load_table(table_path);
  int n = t.a.n();
  std::vector<GridAxis> axes = parse_grid(grid_spec, n);
  std::vector<std::vector<double>> rows;
  std::vector<int> idx(n, 0);
  for (;;) {
    std::vector<double> x(n);
    for (int d = 0; d < n; ++d)
      x[d] = axes[d].lo +
             (axes[d].hi - axes[d].lo) * idx[d] / (axes[d].count - 1);
    double s = std::nan(""), s0 = std::nan("");
    try {
      s = eval_S(t, x);
      s0 = eval_S0(t, x);
    } catch (const Error&) {
    }
    std::vector<double> row = x;
    row.push_back(s);
    row.push_back(s0);
    rows.push_back(std::move(row));
    int d = n - 1;
    while (d >= 0 && ++idx[d] == axes[d].count) idx[d--] = 0;
    if (d < 0) break;
  }
  std::ostringstream os;
  os << std::setprecision(12);
  if (format == "csv") {
    for (int d = 1; d <= n; ++d) os << "x" << d << ",";
    os << "S,S0\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        os << (i ? "," : "") << row[i];
      os << "\n";
    }
  } else if (format == "json") {
    os << "{\n \"schema_version\": 1,\n \"columns\": [";
    for (int d = 1; d <= n; ++d) os << "\"x" << d << "\", ";
    os << "\"S\", \"S0\"],\n \"rows\": [\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      os << "  [";
      for (std::size_t i = 0; i < rows[r].size(); ++i)
        os << (i ? ", " : "") << rows[r][i];
      os << "]" << (r + 1 < rows.size() ? "," : "") << "\n";
    }
    os << " ]\n}\n";
  } else {
    throw ParseError("format must be csv or json, got: " + format);
  }
  write_output(out_path, os.str());
  return 0;
}

int cmd_series(const std::string& table_path, const std::string& out_path) {
  FundamentalSolutionTable t = load_table(table_path);
  std::ostringstream os;
  os << "n " << t.a.n() << "\nk " << t.a.k() << "\nJmax " << t.Jmax << "\nL "
     << t.L << "\n";
  os << std::setprecision(12) << "R_valid " << t.R_valid << "\n";
  for (std::size_t j = 0; j < t.f.size(); ++j) {
    os << "f " << j;
    os << std::setprecision(12);
    for (double c : t.f[j].coeffs) os << " " << c;
    os << "\n";
  }
  for (const auto& [alpha, v] : t.b)
    os << "b " << alpha.str() << " " << std::fixed << std::setprecision(7)
       << v << std::defaultfloat << "\n";
  write_output(out_path, os.str());
  return 0;
}

int cmd_oracle(const std::string& op_path, int grid, int jmax) {
  OperatorCoefficients a = OperatorCoefficients::load(op_path);
  require_elliptic(a);
  FundamentalSolutionTable t = build_table(a, jmax);
  KernelHandle k = kernel_from_table(t, 0);
  std::cout << std::setprecision(6);
  std::cout << "R_valid " << t.R_valid << "\n";
  TestFunction phi;
  phi.center.assign(a.n(), 0.0);
  phi.center[0] = 0.25 * t.R_valid;
  phi.R_supp = 0.5 * t.R_valid;
  double delta_err = distributional_delta_test(k, a, phi, grid);
  std::cout << "delta_test_rel_error " << delta_err << "\n";
  double res = residual_scan(k, a, 0.2 * t.R_valid, 0.8 * t.R_valid, 20);
  std::cout << "residual_scan_max " << res << "\n";
  return 0;
}

int cmd_jump(const std::string& table_path, const std::string& boundary_spec,
             const std::string& density, const std::string& beta_str, int grid,
             const std::string& out_path) {
  FundamentalSolutionTable t = load_table(table_path);
  int n = t.a.n();
  ParamBoundary b = make_boundary(boundary_spec, grid);
  if (b.n != n) throw ParseError("boundary dimension does not match table");
  DensitySamples mu = sample_density(density, b);
  MultiIndex beta = MultiIndex::parse(beta_str, n);
  JumpReport rep = jump_report(t, b, mu, beta);
  write_output(out_path, jump_csv(rep, n));
  std::cout << std::setprecision(6);
  std::cout << "max_rel_error " << rep.max_rel_error << "\n";
  std::cout << "median_rel_error " << rep.median_rel_error << "\n";
  return 0;
}

void emit_error_json(const std::string& kind, const std::string& message) {
  std::string msg;
  for (char c : message) {
    if (c == '"' || c == '\\') msg.push_back('\\');
    if (c == '\n') {
      msg += "\\n";
      continue;
    }
    msg.push_back(c);
  }
  std::cerr << "{\"error\": \"" << kind << "\", \"message\": \"" << msg
            << "\"}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fundsol: fundamental solutions of elliptic operators"};
  app.require_subcommand(1);

  std::string op_path, table_path, out_path, format = "csv";
  std::string boundary_spec = "circle", density = "1", beta_str, grid_spec;
  int jmax = 40, quad_order = 0, grid_n = 96, jump_nodes = 256;
  double target_radius = 0;
  long long seed = 0;

  auto* check = app.add_subcommand("check", "ellipticity report");
  check->add_option("--operator", op_path, "operator file")->required();

  auto* build = app.add_subcommand("build", "assemble a series table");
  build->add_option("--operator", op_path, "operator file")->required();
  build->add_option("--jmax", jmax, "series truncation order");
  build->add_option("--target-radius", target_radius,
                    "grow Jmax until the validity radius covers this");
  build->add_option("--out", out_path, "output table file");

  auto* eval = app.add_subcommand("eval", "evaluate S and S0 on a grid");
  eval->add_option("--table", table_path, "table file")->required();
  eval->add_option("--grid", grid_spec, "axes min:max:count per dimension")
      ->required();
  eval->add_option("--out", out_path, "output file");
  eval->add_option("--format", format, "csv or json");

  auto* series = app.add_subcommand("series", "dump f_j and b_alpha");
  series->add_option("--table", table_path, "table file")->required();
  series->add_option("--out", out_path, "output file");

  auto* oracle = app.add_subcommand("oracle", "run the oracle suite");
  oracle->add_option("--operator", op_path, "operator file")->required();
  oracle->add_option("--grid", grid_n, "quadrature resolution");
  oracle->add_option("--jmax", jmax, "series truncation order");
  oracle->add_option("--quad-order", quad_order, "unused reserve knob");
  oracle->add_option("--seed", seed, "reserved; outputs are deterministic");

  auto* jump = app.add_subcommand("jump", "boundary jump report");
  jump->add_option("--table", table_path, "table file")->required();
  jump->add_option("--boundary", boundary_spec, "boundary spec");
  jump->add_option("--density", density, "density expression");
  jump->add_option("--beta", beta_str, "derivative multi-index")->required();
  jump->add_option("--grid", jump_nodes, "boundary node count");
  jump->add_option("--out", out_path, "output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(op_path);
    if (build->parsed())
      return cmd_build(op_path, jmax, target_radius, out_path);
    if (eval->parsed())
      return cmd_eval(table_path, grid_spec, out_path, format);
    if (series->parsed()) return cmd_series(table_path, out_path);
    if (oracle->parsed()) return cmd_oracle(op_path, grid_n, jmax);
    if (jump->parsed())
      return cmd_jump(table_path, boundary_spec, density, beta_str,
                      jump_nodes, out_path);
  } catch (const NonElliptic& e) {
    emit_error_json("NonElliptic", e.what());
    return 2;
  } catch (const ParseError& e) {
    emit_error_json("ParseError", e.what());
    return 1;
  } catch (const Error& e) {
    emit_error_json("Error", e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error_json("Internal", e.what());
    return 1;
  }
  return 1;
}
