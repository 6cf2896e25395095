#include <doctest.h>

#include <cmath>
#include <limits>

#include "bergman/io.hpp"
#include "bergman/report.hpp"
#include "bergman/suite.hpp"

using namespace bergman;
using io::Json;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("complex numbers") {
  CHECK(io::parse_complex("1.5,-2") == Complex{1.5, -2.0});
  CHECK(io::parse_complex("3") == Complex{3.0, 0.0});
  CHECK(io::complex_from_json(io::to_json(Complex{0.1, 0.2})) == Complex{0.1, 0.2});
  CHECK(code_of([] { io::parse_complex("1,x"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::complex_from_json(Json::array({1.0})); }) == ErrorCode::ParseError);
}

TEST_CASE("domain round trips") {
  for (const auto& name : {"halfplane", "sector", "disk", "disk-exterior", "cusp"}) {
    const DomainSpec d = *domain_preset(name);
    const DomainSpec back = io::domain_from_json(io::to_json(d));
    CHECK(io::to_json(back).dump() == io::to_json(d).dump());
    for (const Complex z : {Complex{0.3, 0.1}, Complex{-1.0, 2.0}, Complex{0.5, -0.5}}) {
      CHECK(contains(back, z) == contains(d, z));
    }
  }
  const DomainSpec img(MoebiusImage{std::make_shared<const DomainSpec>(unit_disk_exterior()),
                                    MoebiusMap::inversion()});
  CHECK(io::to_json(io::domain_from_json(io::to_json(img))).dump() == io::to_json(img).dump());

  CHECK(contains(io::domain_from_json(Json{{"preset", "sector"}}), {0.5, 0.5}) == Membership::Interior);
  CHECK(contains(io::load_domain("halfplane"), {0.0, 1.0}) == Membership::Interior);

  CHECK(code_of([] { io::domain_from_json(Json{{"variant", "triangle"}}); }) == ErrorCode::ParseError);
  CHECK(code_of([] { io::domain_from_json(Json::parse(R"({"variant": "sector", "parameters": {"opening": "wide"}})")); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::load_domain("/nonexistent/domain.json"); }) == ErrorCode::ParseError);
  // omitted parameters take the catalogue defaults
  const DomainSpec dflt = io::domain_from_json(Json::parse(R"({"variant": "sector", "parameters": {}})"));
  CHECK(io::to_json(dflt).dump() == io::to_json(quadrant_sector()).dump());
}

TEST_CASE("function descriptors") {
  const DomainSpec hp = upper_half_plane();
  const HoloFun r = io::parse_function(hp, "rational:0,-1");
  CHECK(std::abs(eval(r, {0.0, 1.0}) + 0.25) < 1e-15);
  const HoloFun k = io::parse_function(hp, "kernel:0,2");
  CHECK(std::abs(eval(k, {0.0, 2.0}) - kernel(hp, {0.0, 2.0}, {0.0, 2.0})) < 1e-15);
  const HoloFun m = io::parse_function(unit_disk(), "monomial:2:0,1");
  CHECK(std::abs(eval(m, 0.5) - Complex{0.0, 0.25}) < 1e-15);

  const HoloFun comb = linear_combination(hp, {Complex{0.5, 1.0}, 2.0}, {r, k});
  const HoloFun back = io::function_from_json(hp, io::to_json(comb));
  for (const Complex z : {Complex{0.2, 0.7}, Complex{-1.0, 3.0}}) CHECK(std::abs(eval(back, z) - eval(comb, z)) < 1e-14);
  CHECK(io::to_json(back).dump() == io::to_json(comb).dump());

  CHECK(code_of([&] { io::parse_function(hp, "spline:1"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { io::parse_function(hp, R"({"form": "kernel-section"})"); }) == ErrorCode::ParseError);
}

TEST_CASE("point sets") {
  const DomainSpec hp = upper_half_plane();
  const auto listed = io::load_points("list:0,-1;2,-3", hp, 1);
  REQUIRE(listed.size() == 2);
  CHECK(listed[1] == Complex{2.0, -3.0});
  CHECK(io::load_points("gen:annulus:5", hp, 1).size() == 5);
  CHECK(io::load_points("gen:random:4", hp, 9) == io::load_points("gen:random:4", hp, 9));
  CHECK(code_of([&] { io::load_points("gen:annulus:x", hp, 1); }) == ErrorCode::ParseError);
}

TEST_CASE("quadrature config") {
  QuadConfig q;
  q.abs_tol = 1e-7;
  q.max_cells = 1234;
  const QuadConfig back = io::quad_config_from_json(io::to_json(q));
  CHECK(back.abs_tol == 1e-7);
  CHECK(back.max_cells == 1234);
}

TEST_CASE("check entries") {
  CHECK(check_absolute("a", "halfplane", 1.0, 1.0 + 1e-9, 1e-8).pass);
  CHECK_FALSE(check_absolute("a", "halfplane", 1.0, 1.1, 1e-8).pass);
  CHECK(check_relative("r", "halfplane", 100.0, 100.5, 1e-2).pass);
  CHECK(check_below("b", "sector", 0.5, 1.0).pass);
  CHECK_FALSE(check_below("b", "sector", 1.0, 1.0).pass);
  CHECK(check_above("c", "sector", 2.0, 1.0).pass);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const CheckEntry& e : {check_absolute("n", "", nan, 0.0, 1.0), check_below("n", "", nan, 1.0),
                              check_above("n", "", nan, 0.0), check_relative("n", "", nan, 1.0, 1.0)}) {
    CHECK_FALSE(e.pass);
  }
}

TEST_CASE("reports") {
  Report r;
  r.command = "transform";
  r.config = {{"tol", 1e-8}};
  r.checks.push_back(check_below("x", "halfplane", 0.1, 1.0));
  CHECK(r.all_pass());
  CHECK(exit_code(r) == kExitOk);

  const Json j = to_json(r);
  CHECK(j.at("schema") == kReportSchemaVersion);
  CHECK(j.at("pass") == true);
  for (const auto& key : {"check_id", "value", "expected", "tol", "pass"}) CHECK(j.at("checks").at(0).contains(key));
  CHECK(to_json(r).dump() == j.dump());

  const std::string csv = to_csv(r);
  CHECK(csv.rfind("check_id,domain,kind,value,expected,tol,pass,converged\n", 0) == 0);
  CHECK(csv.find("x,halfplane,below") != std::string::npos);

  r.checks.push_back(check_above("y", "halfplane", 0.0, 1.0));
  CHECK(exit_code(r) == kExitCheckFailed);
  r.checks.back().converged = false;
  CHECK(exit_code(r) == kExitBudget);

  Report errs;
  errs.errors.push_back("PointInsideDomain: inside");
  CHECK_FALSE(errs.all_pass());

  SUBCASE("non-finite values are written as strings") {
    Report nan_report;
    nan_report.checks.push_back(check_below("z", "sector", std::numeric_limits<double>::quiet_NaN(), 1.0));
    const Json nj = to_json(nan_report);
    CHECK(nj.at("checks").at(0).at("value").is_string());
    CHECK(Json::parse(nj.dump()).at("checks").at(0).at("value").is_string());
  }
}

TEST_CASE("schema lists every acceptance check id") {
  const Json s = report_schema();
  CHECK(s.at("schema") == kReportSchemaVersion);
  for (const auto& key : {"check_id", "value", "expected", "tol", "pass"}) CHECK(s.at("check_entry").contains(key));
  CHECK(s.at("exit_codes").size() == 4);

  const auto& criteria = acceptance_criteria();
  REQUIRE(criteria.size() == 13);
  REQUIRE(s.at("acceptance").size() == criteria.size());
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    CHECK(criteria[k].id == static_cast<int>(k + 1));
    CHECK(s.at("acceptance").at(k).at("check_id") == criteria[k].check_id);
  }
}
