#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "plap/errors.hpp"
#include "plap/io.hpp"

using namespace plap;
using nlohmann::json;

TEST_CASE("polygon text round trip") {
  const ConvexPolygon square = rectangle_polygon(1.0, 1.0);
  const std::string text = polygon_text(square);
  const ConvexPolygon back = parse_polygon_text(text);
  REQUIRE(back.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(back[i].x() == doctest::Approx(square[i].x()).epsilon(1e-11));
    CHECK(back[i].y() == doctest::Approx(square[i].y()).epsilon(1e-11));
  }
}

TEST_CASE("polygon parser: comments, blanks, and line-numbered errors") {
  const ConvexPolygon tri = parse_polygon_text(
      "# a triangle\n"
      "0 0   # origin\n"
      "\n"
      "1 0\n"
      "0 1\n");
  CHECK(tri.size() == 3);

  const auto message_of = [](const std::string& text) {
    try {
      parse_polygon_text(text, "test.poly");
    } catch (const config_error& ex) {
      return std::string(ex.what());
    }
    return std::string();
  };
  CHECK(message_of("0 0\nnonsense\n1 1\n").find("test.poly:2") !=
        std::string::npos);
  CHECK(message_of("0 0\n1 0 7\n").find(":2:") != std::string::npos);
  CHECK(message_of("0 0\n1 0\n").find("test.poly") != std::string::npos);
  // collinear input collapses below 3 vertices
  CHECK_THROWS_AS(parse_polygon_text("0 0\n1 0\n2 0\n"), config_error);
}

TEST_CASE("polygon file I/O") {
  const std::string path = "/tmp/plap_io_test.poly";
  const ConvexPolygon hex = regular_polygon(6);
  write_polygon_file(path, hex);
  const ConvexPolygon back = read_polygon_file(path);
  REQUIRE(back.size() == 6);
  CHECK(area(back) == doctest::Approx(area(hex)).epsilon(1e-10));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_polygon_file("/no/such/file.poly"), config_error);
}

TEST_CASE("number formatting is 12 significant digits") {
  CHECK(format_number(19.739208802178716) == "19.7392088022");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(-0.5) == "-0.5");
  CHECK(format_number(1e-15) == "1e-15");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("solver config JSON round trip") {
  SolverConfig cfg;
  cfg.levels = 4;
  cfg.max_iter = 123;
  cfg.tol = 1e-8;
  cfg.p_schedule = 1.5;
  cfg.resolution = 30;
  cfg.radial_n = 2048;
  const SolverConfig back = config_from_json(config_json(cfg));
  CHECK(back.levels == cfg.levels);
  CHECK(back.max_iter == cfg.max_iter);
  CHECK(back.tol == cfg.tol);
  CHECK(back.p_schedule == cfg.p_schedule);
  CHECK(back.resolution == cfg.resolution);
  CHECK(back.radial_n == cfg.radial_n);

  // partial objects keep defaults for the rest
  const SolverConfig partial = config_from_json(json{{"levels", 2}});
  CHECK(partial.levels == 2);
  CHECK(partial.resolution == SolverConfig{}.resolution);

  CHECK_THROWS_AS(config_from_json(json{{"levels", "two"}}), config_error);
}

TEST_CASE("result payloads serialize with stable fields") {
  BoundReport rep;
  rep.name = "demo";
  rep.value = 1.5;
  rep.lower = 1.0;
  rep.margin = 0.1;
  rep.evaluate();
  const json jr = report_json(rep);
  CHECK(jr["name"] == "demo");
  CHECK(jr["status"] == "satisfied");
  CHECK(jr["value"] == 1.5);
  CHECK(jr["upper"].is_null());  // +inf has no JSON number

  SweepRecord rec;
  rec.experiment = "cylinder";
  rec.params = {{"p", 2.0}, {"L", 4.0}};
  rec.values = {{"lambda", 10.51},
                {"mu", std::numeric_limits<double>::quiet_NaN()}};
  rec.status = BoundStatus::Inconclusive;
  const json jc = record_json(rec);
  CHECK(jc["params"]["L"] == 4.0);
  CHECK(jc["values"]["mu"].is_null());
  CHECK(jc["status"] == "inconclusive");

  RatioResult rr;
  rr.p = Exponent::finite(2.0);
  rr.q = Exponent::one();
  rr.ratio = 1.1777;
  rr.provenance = "fem/cheeger";
  const json jq = ratio_json(rr);
  CHECK(jq["p"] == "2");
  CHECK(jq["q"] == "1");
  CHECK(jq["provenance"] == "fem/cheeger");
}

TEST_CASE("CSV emitters: fixed columns, empty NaN cells, quoting") {
  SweepRecord rec;
  rec.experiment = "cylinder";
  rec.params = {{"p", 2.0}, {"L", 1.0}};
  rec.values = {{"lambda", 19.7427311095},
                {"lambda_err", std::numeric_limits<double>::quiet_NaN()},
                {"lower", 19.7392088022},
                {"upper", 19.7392088022},
                {"lambda_scale", 4.44327931932},
                {"interval_scale", 3.14159265359}};
  rec.status = BoundStatus::Satisfied;
  rec.note = "hello, \"world\"";
  std::ostringstream os;
  write_records_csv(os, {rec});
  const std::string csv = os.str();
  CHECK(csv.find("experiment,p,L,lambda,lambda_err,lower,upper,lambda_scale,"
                 "interval_scale,status,note\n") == 0);
  // NaN cell between lambda and lower prints empty
  CHECK(csv.find("19.7427311095,,19.7392088022") != std::string::npos);
  CHECK(csv.find("\"hello, \"\"world\"\"\"") != std::string::npos);

  BoundReport rep;
  rep.name = "x";
  rep.value = 0.5;
  rep.lower = 0.25;
  rep.evaluate();
  std::ostringstream ro;
  write_reports_csv(ro, {rep});
  CHECK(ro.str().find("name,value,lower,upper,") == 0);
  CHECK(ro.str().find("x,0.5,0.25,,0,0,0,satisfied,1,") != std::string::npos);

  std::ostringstream ho;
  write_history_csv(ho, {{3, 1.25, 1.5, 0}});
  CHECK(ho.str() == "iteration,value,diameter,restart\n3,1.25,1.5,0\n");

  for (const char* exp : {"ball_dimension", "perforation", "cylinder"})
    CHECK(!sweep_columns(exp).empty());
  CHECK(sweep_columns("unknown").empty());
}

TEST_CASE("SVG plots carry data and switch to log axes over decades") {
  PlotSeries linear{"demo", {{1.0, 2.0}, {2.0, 3.0}, {3.0, 2.5}}};
  const std::string svg = svg_plot({linear}, "L", "lambda", "demo plot");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("demo plot") != std::string::npos);
  CHECK(svg.find("(log)") == std::string::npos);

  PlotSeries wide{"decades", {{2.0, 5.8}, {100.0, 5e3}, {10000.0, 3e5}}};
  const std::string logsvg = svg_plot({wide}, "d", "lambda_p", "growth");
  CHECK(logsvg.find("(log)") != std::string::npos);

  const std::string fig =
      svg_polygon_figure(regular_polygon(5), "a pentagon");
  CHECK(fig.find("<polygon") != std::string::npos);
  CHECK(fig.find("a pentagon") != std::string::npos);
}

TEST_CASE("schema subset validator") {
  const json schema = {
      {"type", "object"},
      {"required", {"kind", "count"}},
      {"additionalProperties", false},
      {"properties",
       {{"kind", {{"enum", {"a", "b"}}}},
        {"count", {{"type", "number"}, {"minimum", 0}}},
        {"tags", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}};

  CHECK(validate_against_schema({{"kind", "a"}, {"count", 2}}, schema).empty());
  CHECK(validate_against_schema(
            {{"kind", "b"}, {"count", 0}, {"tags", {"x", "y"}}}, schema)
            .empty());

  const auto errs = validate_against_schema(
      {{"kind", "c"}, {"count", -1}, {"tags", {"x", 7}}, {"extra", 1}},
      schema);
  REQUIRE(errs.size() == 4);
  bool saw_enum = false, saw_min = false, saw_item = false, saw_extra = false;
  for (const auto& e : errs) {
    saw_enum = saw_enum || e.find("$.kind") != std::string::npos;
    saw_min = saw_min || e.find("$.count") != std::string::npos;
    saw_item = saw_item || e.find("$.tags[1]") != std::string::npos;
    saw_extra = saw_extra || e.find("'extra'") != std::string::npos;
  }
  CHECK(saw_enum);
  CHECK(saw_min);
  CHECK(saw_item);
  CHECK(saw_extra);

  const auto missing = validate_against_schema(json::object(), schema);
  CHECK(missing.size() == 2);  // both required keys absent
}

TEST_CASE("shipped result schema accepts a real envelope") {
  const char* src = std::getenv("PLAP_SOURCE_DIR");
  REQUIRE(src != nullptr);
  std::ifstream in(std::string(src) + "/schemas/result.schema.json");
  REQUIRE(in.good());
  json schema;
  in >> schema;

  SweepRecord rec;
  rec.experiment = "cylinder";
  rec.params = {{"p", 2.0}, {"L", 1.0}};
  rec.values = {{"lambda", 19.74}};
  rec.status = BoundStatus::Satisfied;
  const json envelope = {
      {"command", "sweep-cylinder"},
      {"config", {{"solver", config_json({})}, {"threads", 1}}},
      {"result", {{"records", {record_json(rec)}}}}};
  CHECK(validate_against_schema(envelope, schema).empty());

  json bad = envelope;
  bad["command"] = "frobnicate";
  bad["config"]["solver"].erase("tol");
  const auto errs = validate_against_schema(bad, schema);
  CHECK(errs.size() == 2);
}
