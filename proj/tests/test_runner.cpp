#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "aklt/runner.hpp"
#include "aklt/vbs_oracle.hpp"

using namespace aklt;

TEST_CASE("IntRange") {
  CHECK(IntRange::parse("3").lo == 3);
  CHECK(IntRange::parse("3").hi == 3);
  const IntRange r = IntRange::parse("1:4");
  CHECK(r.lo == 1);
  CHECK(r.hi == 4);
  CHECK(IntRange::parse("5:4").empty());
  CHECK(r.to_string() == "1:4");
  CHECK_THROWS_AS(IntRange::parse("a"), std::invalid_argument);
  CHECK_THROWS_AS(IntRange::parse("1:"), std::invalid_argument);
  CHECK_THROWS_AS(IntRange::parse(""), std::invalid_argument);
}

TEST_CASE("format_double is the shortest round trip") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("expand order and validation") {
  RunConfig c;
  c.mode = BoundaryMode::HalfBoundary;
  c.la = IntRange::parse("1:2");
  c.gap = IntRange::parse("0:1");
  c.lb = IntRange::single(3);
  const auto pts = expand(c);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == BlockGeometry::half(1, 1, 0, 3, 1));
  CHECK(pts[1] == BlockGeometry::half(1, 1, 1, 3, 1));
  CHECK(pts[2] == BlockGeometry::half(1, 2, 0, 3, 1));
  CHECK(pts[3] == BlockGeometry::half(1, 2, 1, 3, 1));

  c.la = IntRange::parse("0:1");
  CHECK_THROWS_AS(expand(c), std::invalid_argument);

  RunConfig big;
  big.mode = BoundaryMode::Periodic;
  big.la = IntRange::single(5);
  big.lb = IntRange::single(5);
  CHECK(expand(big).size() == 1);
  big.oracle = true;
  CHECK_THROWS_AS(expand(big), std::invalid_argument);

  RunConfig ring;
  ring.mode = BoundaryMode::Periodic;
  ring.ring_length = 5;
  CHECK_THROWS_AS(expand(ring), std::invalid_argument);
  ring.ring_length = 3;
  CHECK(expand(ring).size() == 1);

  RunConfig empty;
  empty.lb = IntRange::parse("2:1");
  CHECK(empty.has_empty_range());
  CHECK(expand(empty).empty());
}

TEST_CASE("run rows") {
  RunConfig c;
  c.mode = BoundaryMode::Spin1Boundary;
  c.weights = BoundaryWeights::separable(1, 2);
  c.la = IntRange::single(1);
  c.lb = IntRange::single(1);
  c.gap = IntRange::parse("0:2");
  c.oracle = true;
  c.closed_form = "separable_adjacent";
  const auto rows = run(c);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(rows[0].negativity_analytic - 0.4) < 1e-12);
  CHECK(rows[1].negativity_analytic <= 1e-12);
  for (const ResultRow& r : rows) {
    CHECK(r.weights_label == "cd");
    REQUIRE(r.abs_diff.has_value());
    CHECK(*r.abs_diff <= 1e-10);
    REQUIRE(r.closed_form.has_value());
  }
  CHECK(!any_mismatch(rows, 1e-10));

  c.closed_form = "nope";
  CHECK_THROWS_AS(run(c), std::invalid_argument);
}

TEST_CASE("csv and json layout") {
  RunConfig c;
  c.la = IntRange::parse("1:2");
  c.outer_left = IntRange::parse("0:1");
  const auto rows = run(c);
  std::ostringstream csv;
  write_csv(csv, c, rows);
  const std::string text = csv.str();
  CHECK(text.rfind("# aklt_negativity ", 0) == 0);
  CHECK(text.find("\nmode,lc_l1,la,gap_l2,lb,le,weights,negativity_analytic,negativity_oracle,spectrum_min,abs_diff\n") !=
        std::string::npos);
  CHECK(text.find("# flagged: half(L_C=0, L_A=1") != std::string::npos);
  CHECK(text.find("\nhalf,1,2,0,1,1,,") != std::string::npos);

  std::ostringstream again;
  write_csv(again, c, run(c));
  CHECK(again.str() == text);

  std::ostringstream js;
  c.format = OutputFormat::Json;
  write_rows(js, c, rows);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["rows"][0]["negativity_oracle"].is_null());
  CHECK(doc["rows"][0]["lc_l1"] == 0);
  CHECK(doc["rows"][0]["weights"].is_null());
  CHECK(parse_output_format("json") == OutputFormat::Json);
  CHECK_THROWS_AS(parse_output_format("xml"), std::invalid_argument);
}

TEST_CASE("oracle suite coverage") {
  const auto cases = oracle_suite(8);
  CHECK(cases.size() >= 60);
  int half = 0, spin1 = 0, ring = 0;
  for (const OracleCase& c : cases) {
    CHECK(c.geometry.bulk_sites() <= 8);
    switch (c.geometry.mode) {
      case BoundaryMode::HalfBoundary: ++half; break;
      case BoundaryMode::Spin1Boundary: ++spin1; break;
      case BoundaryMode::Periodic: ++ring; break;
    }
  }
  CHECK(half > 20);
  CHECK(spin1 > 20);
  CHECK(ring > 20);
  CHECK(weight_test_set().size() == 9);
}
