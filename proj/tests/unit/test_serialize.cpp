#include <doctest.h>

#include <cmath>
#include <string>

#include "cornerq/errors.hpp"
#include "cornerq/serialize.hpp"

using namespace cornerq;

TEST_CASE("numbers carry 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(2.0) == "2");
  CHECK(format_number(NAN) == "null");
  CHECK(std::stod(format_number(kPi)) == kPi);
}

TEST_CASE("solutions round-trip") {
  Solution s;
  s.omega1_terms = 64;
  s.sigma_offset = -0.05;
  s.v1 = {0.25, 0.0, 1e-3};
  s.v2 = {0.1};
  s.psi_expression = "pi/4*cos(phi)";
  s.phi_n_expression = "-pi/4";
  s.transforms = {ConfElement::boost(2, 0.5), ConfElement::lambda(), compose(ConfElement::rotation(0, 0.2), ConfElement::lambda())};
  const std::string text = solution_to_json(s);
  const Solution t = solution_from_json(text);
  CHECK(t.omega1_terms == 64);
  CHECK(t.sigma_offset == s.sigma_offset);
  CHECK(t.v1 == s.v1);
  CHECK(t.v2 == s.v2);
  CHECK(t.psi_expression == s.psi_expression);
  // A combined element is written as a matrix followed by the swap.
  REQUIRE(t.transforms.size() == 4u);
  CHECK(t.transforms[0].L == s.transforms[0].L);
  CHECK(t.transforms[1].lambda_exp == 1);
  CHECK(solution_to_json(t) == text);
  const Vec4 p{0.1, 0.2, 0.3, 0.4};
  CHECK((*t.field())(p) == doctest::Approx((*s.field())(p)).epsilon(1e-14));
}

TEST_CASE("malformed solutions are rejected") {
  CHECK_THROWS_AS(solution_from_json("{"), ParseError);
  CHECK_THROWS_AS(solution_from_json("[]"), ParseError);
  CHECK_THROWS_AS(solution_from_json(R"({"v1": [], "v2": []})"), ParseError);
  CHECK_THROWS_AS(solution_from_json(R"({"omega1_terms": 4, "v1": [], "v2": [], "transforms": [{"type": "spin"}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      solution_from_json(R"({"omega1_terms": 4, "v1": [], "v2": [], "transforms": [{"type": "lorentz", "matrix": [[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}]})"),
      ParseError);
  CHECK_THROWS_AS(solution_from_json(R"({"omega1_terms": "x", "v1": [], "v2": []})"), ParseError);
}

TEST_CASE("missing offset is recomputed") {
  const Solution s = solution_from_json(R"({"omega1_terms": 16, "v1": [], "v2": []})");
  CHECK(std::abs((*s.field())(sphere_point(kHalfPi, 0.9, 0.4))) < 1e-14);
}

TEST_CASE("config round-trips") {
  Config c;
  c.n_terms = 512;
  c.orders = {6, 7, 3, 5};
  c.h = 1e-3;
  c.delta = 0.08;
  c.tolerances.P3M = 2e-3;
  c.threads = 3;
  c.report_path = "r.json";
  c.csv_path = "r.csv";
  const std::string text = config_to_json(c);
  const Config d = config_from_json(text);
  CHECK(d == c);
  CHECK(config_to_json(d) == text);
  CHECK(config_from_json("{}") == Config{});
  CHECK_THROWS_AS(config_from_json(R"({"h": -1})"), DomainError);
  CHECK_THROWS_AS(config_from_json(R"({"N_terms": 0})"), DomainError);
  CHECK_THROWS_AS(config_from_json("{\"h\": }"), ParseError);
}

TEST_CASE("report exports") {
  const ResidualReport r = residual_report(*make_constant(0.0));
  const std::string csv = report_to_csv(r);
  CHECK(csv.rfind("region,rho,phi,alpha,theta,condition,residual\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == r.nodes.size() + 1);
  const std::string json = report_to_json(r);
  CHECK(json.find("\"pass\": false") != std::string::npos);
  CHECK(report_to_json(residual_report(*make_constant(0.0))) == json);
}
