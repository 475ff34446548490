#include "fundsol/table_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fundsol/errors.hpp"

namespace fundsol {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

json expansion_to_json(const HarmonicExpansion& e) {
  return json{{"L", e.L}, {"coeffs", e.coeffs}};
}

HarmonicExpansion expansion_from_json(int n, const json& j) {
  HarmonicExpansion e(n, j.at("L").get<int>());
  auto c = j.at("coeffs").get<std::vector<double>>();
  if (c.size() != e.coeffs.size())
    throw ParseError("table: harmonic coefficient count mismatch");
  e.coeffs = std::move(c);
  return e;
}

}  // namespace

std::string table_to_json(const FundamentalSolutionTable& t) {
  json j;
  j["schema_version"] = kSchemaVersion;
  json op;
  op["n"] = t.a.n();
  op["k"] = t.a.k();
  json oc = json::array();
  for (const auto& [alpha, v] : t.a.coeffs())
    oc.push_back(json::array({alpha.str(), v}));
  op["coeffs"] = oc;
  j["operator"] = op;
  j["Jmax"] = t.Jmax;
  j["L"] = t.L;
  j["class_l"] = t.class_l;
  j["R_valid"] = t.R_valid;
  j["parity_checked"] = t.parity_checked;
  json terms = json::array();
  for (const RadialTerm& term : t.terms.terms)
    terms.push_back(json{{"m", term.m},
                         {"log", term.log_flag},
                         {"angular", expansion_to_json(term.angular)}});
  j["terms"] = terms;
  json f = json::array();
  for (const HarmonicExpansion& e : t.f) f.push_back(expansion_to_json(e));
  j["f"] = f;
  json b = json::array();
  for (const auto& [alpha, v] : t.b) b.push_back(json::array({alpha.str(), v}));
  j["b"] = b;
  return j.dump(1);
}

FundamentalSolutionTable table_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("table: invalid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw ParseError("table: unsupported schema_version");
    const json& op = j.at("operator");
    int n = op.at("n").get<int>();
    int k = op.at("k").get<int>();
    std::map<MultiIndex, double> coeffs;
    for (const auto& e : op.at("coeffs"))
      coeffs[MultiIndex::parse(e.at(0).get<std::string>(), n)] =
          e.at(1).get<double>();
    FundamentalSolutionTable t(OperatorCoefficients(n, k, std::move(coeffs)));
    t.Jmax = j.at("Jmax").get<int>();
    t.L = j.at("L").get<int>();
    t.class_l = j.at("class_l").get<int>();
    t.R_valid = j.at("R_valid").get<double>();
    t.parity_checked = j.at("parity_checked").get<bool>();
    t.terms.n = n;
    for (const auto& e : j.at("terms"))
      t.terms.terms.push_back(RadialTerm{
          e.at("m").get<double>(), e.at("log").get<bool>(),
          expansion_from_json(n, e.at("angular"))});
    for (const auto& e : j.at("f"))
      t.f.push_back(expansion_from_json(n, e));
    for (const auto& e : j.at("b"))
      t.b[MultiIndex::parse(e.at(0).get<std::string>(), n)] =
          e.at(1).get<double>();
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("table: missing or malformed field: ") +
                     e.what());
  }
}

void save_table(const FundamentalSolutionTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open table file for writing: " + path);
  out << table_to_json(t) << "\n";
}

FundamentalSolutionTable load_table(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open table file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return table_from_json(ss.str());
}

}  // namespace fundsol
