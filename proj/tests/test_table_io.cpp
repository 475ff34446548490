#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "fundsol/assembly.hpp"
#include "fundsol/errors.hpp"
#include "fundsol/table_io.hpp"

using namespace fundsol;

namespace {

FundamentalSolutionTable sample_table() {
  OperatorCoefficients a(
      2, 1,
      {{MultiIndex{{2, 0}}, 1.0},
       {MultiIndex{{0, 2}}, 1.0},
       {MultiIndex{{0, 0}}, -0.125}});
  return build_table(a, 8);
}

}  // namespace

TEST_CASE("JSON round trip is bit exact") {
  auto t = sample_table();
  std::string text = table_to_json(t);
  auto u = table_from_json(text);
  CHECK(u.a.coeffs() == t.a.coeffs());
  CHECK(u.Jmax == t.Jmax);
  CHECK(u.L == t.L);
  CHECK(u.class_l == t.class_l);
  CHECK(u.R_valid == t.R_valid);
  CHECK(u.parity_checked == t.parity_checked);
  REQUIRE(u.terms.terms.size() == t.terms.terms.size());
  for (std::size_t i = 0; i < t.terms.terms.size(); ++i) {
    CHECK(u.terms.terms[i].m == t.terms.terms[i].m);
    CHECK(u.terms.terms[i].log_flag == t.terms.terms[i].log_flag);
    CHECK(u.terms.terms[i].angular.coeffs == t.terms.terms[i].angular.coeffs);
  }
  CHECK(u.b == t.b);
  // Serialization is deterministic.
  CHECK(table_to_json(u) == text);
}

TEST_CASE("file save and load") {
  auto t = sample_table();
  std::string path = "test_table_io_tmp.json";
  save_table(t, path);
  auto u = load_table(path);
  CHECK(table_to_json(u) == table_to_json(t));
  std::remove(path.c_str());
}

TEST_CASE("invalid JSON is a parse error") {
  CHECK_THROWS_AS(table_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(table_from_json("{\"schema_version\": 999}"), ParseError);
  CHECK_THROWS_AS(table_from_json("{\"schema_version\": 1}"), ParseError);
}

TEST_CASE("missing file is a parse error") {
  CHECK_THROWS_AS(load_table("no_such_table_file.json"), ParseError);
}
