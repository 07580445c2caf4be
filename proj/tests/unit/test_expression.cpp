#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "cornerq/errors.hpp"
#include "cornerq/expression.hpp"

using cornerq::Expression;
using cornerq::ParseError;

namespace {

struct Golden {
  const char* text;
  const char* printed;
  double at_half;  // value at phi = 0.5
};

// clang-format off
const std::vector<Golden> kGolden = {
    {"2+3*4^2", "(2 + (3 * (4 ^ 2)))", 50.0},
    {"1", "1", 1.0},
    {"phi", "phi", 0.5},
    {"pi", "pi", M_PI},
    {"-phi", "(-phi)", -0.5},
    {"\xE2\x88\x92phi", "(-phi)", -0.5},
    {"--2", "(-(-2))", 2.0},
    {"-2^2", "((-2) ^ 2)", 4.0},
    {"2^3^2", "(2 ^ (3 ^ 2))", 512.0},
    {"2^-1", "(2 ^ (-1))", 0.5},
    {"8/4/2", "((8 / 4) / 2)", 1.0},
    {"8-4-2", "((8 - 4) - 2)", 2.0},
    {"2*-3", "(2 * (-3))", -6.0},
    {"(1+2)*3", "((1 + 2) * 3)", 9.0},
    {"1e-3", "0.001", 1e-3},
    {".5", "0.5", 0.5},
    {"2.5E2", "250", 250.0},
    {"sin(phi)", "sin(phi)", 0.479425538604203},
    {"cos(phi)", "cos(phi)", 0.8775825618903728},
    {"tan(phi)", "tan(phi)", 0.5463024898437905},
    {"exp(phi)", "exp(phi)", 1.6487212707001282},
    {"log(phi)", "log(phi)", -0.6931471805599453},
    {"sqrt(phi)", "sqrt(phi)", 0.7071067811865476},
    {"pi/4*cos(phi)", "((pi / 4) * cos(phi))", 0.6892517323383263},
    {"pi/4*cos(phi) + 0.3*cos(2*phi)", "(((pi / 4) * cos(phi)) + (0.29999999999999999 * cos((2 * phi))))", 0.8513424240987681},
    {"  1 +\t2 ", "(1 + 2)", 3.0},
    {"cos(sin(phi))^2", "(cos(sin(phi)) ^ 2)", 0.7872303975994914},
    {"-(phi-1)^2", "((-(phi - 1)) ^ 2)", 0.25},
    {"((phi))", "phi", 0.5},
    {"exp(-phi*phi)", "exp(((-phi) * phi))", 0.7788007830714049},
};
// clang-format on

}  // namespace

TEST_CASE("golden parse, print and evaluate") {
  REQUIRE(kGolden.size() == 30u);
  for (const auto& g : kGolden) {
    CAPTURE(g.text);
    const Expression e = Expression::parse(g.text, "phi");
    CHECK(e.print() == g.printed);
    CHECK(e(0.5) == doctest::Approx(g.at_half).epsilon(1e-9));
    const Expression again = Expression::parse(e.print(), "phi");
    CHECK(again == e);
    CHECK(again.print() == e.print());
  }
}

TEST_CASE("rejection suite reports the offset") {
  const std::vector<std::pair<const char*, std::size_t>> bad = {
      {"(1", 2},     {"1)", 1},        {"foo", 0},     {"sin phi", 4}, {"", 0},        {"1 +", 3},
      {"3 4", 2},    {"r + 1", 0},     {"*2", 0},      {"exp(", 4},    {"1e400", 0},   {"sin()", 4},
      {"2^", 2},     {"pi pi", 3},     {"cosh(phi)", 0}, {"1..2", 0},  {"phi $", 4},
  };
  for (const auto& [text, pos] : bad) {
    CAPTURE(text);
    try {
      Expression::parse(text, "phi");
      FAIL("accepted malformed input");
    } catch (const ParseError& e) {
      CHECK(e.position == pos);
    }
  }
}

TEST_CASE("the variable name is part of the grammar") {
  const Expression e = Expression::parse("-pi/4 + (1 - r^2)^2", "r");
  CHECK(e(1.0) == doctest::Approx(-M_PI / 4));
  CHECK(e.variable() == "r");
  CHECK(e.source() == "-pi/4 + (1 - r^2)^2");
  CHECK_THROWS_AS(Expression::parse("phi", "r"), ParseError);
}

TEST_CASE("evaluation is deterministic and follows IEEE rules") {
  const Expression e = Expression::parse("1/phi", "phi");
  CHECK(std::isinf(e(0.0)));
  CHECK(e(0.25) == 4.0);
  CHECK(std::isnan(Expression::parse("sqrt(phi)", "phi")(-1.0)));
}
