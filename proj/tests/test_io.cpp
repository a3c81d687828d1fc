#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "lincvx/io.hpp"

using namespace lincvx;

TEST_CASE("points and discs round-trip through JSON") {
  const CPoint p{Complex(0.1, -0.25), Complex(1e-17, 3.0)};
  CHECK(point_from_json(to_json(p)) == p);
  CHECK(point_from_json(Json::parse("[0.5, [0, 1]]")) == CPoint{0.5, Complex(0.0, 1.0)});
  CHECK_THROWS_AS(point_from_json(Json::parse("[[1, 2, 3]]")), Error);
  CHECK_THROWS_AS(point_from_json(Json::parse("\"x\"")), Error);
  const Disc d(p, CDirection(CPoint{1.0, Complex(0.0, 2.0)}), 0.75);
  const Disc e = disc_from_json(to_json(d));
  CHECK(e.center == d.center);
  CHECK(e.direction.vector() == d.direction.vector());
  CHECK(e.radius == d.radius);
}

TEST_CASE("domain specs round-trip and reject unknown keys") {
  for (const DomainSpec& d : {DomainSpec::ball(2.0), DomainSpec::model_e(1.5, 0.4), DomainSpec::perturbed_ball(1.0, 2.0, 1.0),
                              DomainSpec::ellipsoid({1.0, 0.7, 0.5, 1.2})}) {
    const DomainSpec back = domain_from_json(to_json(d));
    CHECK(to_json(back) == to_json(d));
    CHECK(back.rho(CPoint{0.1, 0.2}) == d.rho(CPoint{0.1, 0.2}));
  }
  const Json custom = Json::parse(R"({"family": "custom", "expression": "x1^2 + y1^2 + x2^2 + y2^2 - 1",
    "bounding_radius": 1, "shell_width": 0.2, "anchor": [[0, 0], [0, 0]]})");
  CHECK(domain_from_json(custom).rho(CPoint{0.0, 0.0}) == -1.0);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"family": "ball", "radius": 1})")), Error);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"family": "torus"})")), Error);
  CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"params": {"R": 1}})")), Error);
  try {
    domain_from_json(Json::parse(R"({"family": "ball", "radius": 1})"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::spec_parse);
  }
}

TEST_CASE("disc systems from JSON") {
  const CenteredDiscSystem s = system_from_json(Json::parse(
      R"({"center": [0, 0], "discs": [{"direction": [1, 0], "radius": 1}, {"direction": [0, 1], "radius": 0.5}]})"));
  CHECK(s.discs().size() == 2);
  CHECK(s.discs()[1].radius == 0.5);
  CHECK_THROWS_AS(system_from_json(Json::parse(R"({"center": [0, 0], "discs": []})")), Error);
}

TEST_CASE("point lists") {
  CHECK(parse_point_list("0.5, 0, 0,-1") == CPoint{0.5, Complex(0.0, -1.0)});
  CHECK_THROWS_AS(parse_point_list("1,2,3"), Error);
  CHECK_THROWS_AS(parse_point_list("1,a"), Error);
}

TEST_CASE("reports round-trip including non-finite margins") {
  CriterionReport r;
  r.name = "gauge_subadditivity";
  r.verdict = Verdict::fail;
  r.worst_margin = -0.125;
  r.witness = Witness{CPoint{0.1, 0.2}, "X=(1,0)"};
  r.samples_used = 42;
  r.elapsed_ms = 3.5;
  CriterionReport inf = r;
  inf.name = "bipolar_hull";
  inf.verdict = Verdict::inconclusive;
  inf.worst_margin = INFINITY;
  inf.witness.reset();

  const Json doc = report_document(Json{{"seed", 1}}, {r, inf});
  CHECK(doc["tool_version"] == kToolVersion);
  CHECK(doc["reports"][1]["worst_margin"] == "inf");
  const std::vector<CriterionReport> back = reports_from_document(Json::parse(doc.dump()));
  REQUIRE(back.size() == 2);
  CHECK(back[0].name == r.name);
  CHECK(back[0].verdict == r.verdict);
  CHECK(back[0].worst_margin == r.worst_margin);
  CHECK(back[0].witness == r.witness);
  CHECK(back[0].samples_used == 42);
  CHECK(back[0].elapsed_ms == 3.5);
  CHECK(std::isinf(back[1].worst_margin));
  CHECK_FALSE(back[1].witness.has_value());
  CHECK(verdict_from_string("pass") == Verdict::pass);
  CHECK_THROWS_AS(verdict_from_string("maybe"), Error);
}

TEST_CASE("empty report list") {
  const Json doc = Json::parse(report_document(Json::object(), {}).dump());
  CHECK(doc["reports"].is_array());
  CHECK(doc["reports"].empty());
  CHECK(reports_from_document(doc).empty());
}

TEST_CASE("csv export skips missing samples") {
  CriterionReport r;
  r.name = "hor16";
  r.sample_margins = {0.5, NAN, -1.0};
  const std::string csv = reports_csv({r});
  CHECK(csv.find("criterion,sample,margin") == 0);
  CHECK(csv.find("hor16,0,0.5") != std::string::npos);
  CHECK(csv.find("hor16,1,") == std::string::npos);
  CHECK(csv.find("hor16,2,-1") != std::string::npos);
}

TEST_CASE("file errors carry the right codes") {
  try {
    read_json_file("/nonexistent/dir/spec.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  const auto path = std::filesystem::temp_directory_path() / "lincvx_bad.json";
  write_text_file(path.string(), "{ not json");
  try {
    read_json_file(path.string());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::spec_parse);
  }
  std::filesystem::remove(path);
}
