#include "doctest.h"
#include "polytrack/parser.hpp"
#include "support/oracles.hpp"

using namespace polytrack;

TEST_CASE("parses the paper start system") {
  const PolynomialSystem sys = parse_system("ring x, y\npoly x^2-1\npoly y^2-1");
  REQUIRE(sys.variables == std::vector<std::string>{"x", "y"});
  REQUIRE(sys.size() == 2);
  CHECK(sys.polys[0].degree() == 2);
  CHECK(sys.polys[1].degree() == 2);
  CHECK(sys.polys[0].term_count() == 2);
}

TEST_CASE("parses a single linear polynomial") {
  const PolynomialSystem sys = parse_system("ring x\npoly x");
  REQUIRE(sys.size() == 1);
  CHECK(sys.polys[0].degree() == 1);
  CHECK(sys.polys[0].term_count() == 1);
}

TEST_CASE("collects complex coefficients into the expected term map") {
  const PolynomialSystem sys = parse_system("ring x, y\npoly x*y + 3.5*i*x - 2");
  REQUIRE(sys.size() == 1);
  const Polynomial& p = sys.polys[0];
  REQUIRE(p.term_count() == 3);
  CHECK(p.terms().at({1, 1}) == Complex(1.0, 0.0));
  CHECK(p.terms().at({1, 0}) == Complex(0.0, 3.5));
  CHECK(p.terms().at({0, 0}) == Complex(-2.0, 0.0));
}

TEST_CASE("comments, blank lines, and imaginary literals") {
  const PolynomialSystem sys = parse_system(
      "# a comment line\n"
      "ring x  # trailing comment\n"
      "\n"
      "poly 2i*x - (0.6+0.8*i)\n");
  REQUIRE(sys.size() == 1);
  CHECK(sys.polys[0].terms().at({1}) == Complex(0.0, 2.0));
  CHECK(sys.polys[0].terms().at({0}) == Complex(-0.6, -0.8));
}

TEST_CASE("operator precedence: caret binds tighter than unary minus") {
  const PolynomialSystem sys = parse_system("ring x\npoly -x^2");
  CHECK(sys.polys[0].terms().at({2}) == Complex(-1.0, 0.0));
}

TEST_CASE("caret is right-associative on integer towers") {
  const PolynomialSystem sys = parse_system("ring x\npoly x^2^3");
  CHECK(sys.polys[0].degree() == 8);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_system("ring x, y\npoly x^2 + @");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 12);
  }
}

TEST_CASE("unknown identifiers are rejected") {
  CHECK_THROWS_WITH_AS(parse_system("ring x\npoly x + z"),
                       "line 2, column 10: unknown identifier 'z'", ParseError);
}

TEST_CASE("bad exponents are rejected") {
  CHECK_THROWS_AS(parse_system("ring x\npoly x^-2"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x\npoly x^2.5"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x\npoly x^y"), ParseError);
  CHECK_THROWS_AS(parse_system("ring x\npoly x^1e3"), ParseError);
}

TEST_CASE("ring declaration errors") {
  CHECK_THROWS_AS(parse_system("poly x"), ParseError);
  CHECK_THROWS_AS(parse_system("ring i\npoly 1"), ParseError);           // reserved
  CHECK_THROWS_AS(parse_system("ring x, x\npoly x"), ParseError);       // duplicate
  CHECK_THROWS_AS(parse_system("ring x\nring y\npoly x"), ParseError);  // second ring
}

TEST_CASE("print then parse reproduces every corpus system exactly") {
  for (const auto& [name, sys] : oracles::corpus()) {
    CAPTURE(name);
    const PolynomialSystem again = parse_system(print_system(sys));
    REQUIRE(again.variables == sys.variables);
    REQUIRE(again.size() == sys.size());
    for (int k = 0; k < sys.size(); ++k) {
      CHECK(again.polys[k] == sys.polys[k]);
      CHECK(again.polys[k].degree() == sys.polys[k].degree());
    }
  }
}

TEST_CASE("complex literals round-trip through format_complex") {
  const ComplexVector values{Complex(0, 0),     Complex(1, 0),     Complex(-2.5, 0),
                             Complex(0, 1),     Complex(0, -3),    Complex(0.6, 0.8),
                             Complex(-1.5, -2), Complex(3e-17, 9), Complex(1.0 / 3.0, -1e300)};
  for (const Complex& z : values) CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("parse_points reads one point per line") {
  const auto points = parse_points("1, -1\n1, 1\n-1, 1\n-1, -1\n", 2);
  REQUIRE(points.size() == 4);
  CHECK(points[1] == ComplexVector{Complex(1, 0), Complex(1, 0)});
  CHECK(points[3] == ComplexVector{Complex(-1, 0), Complex(-1, 0)});

  const auto mixed = parse_points("3i, -5.727e-17+9.943e-17i\n", 2);
  CHECK(mixed[0][0] == Complex(0, 3));
  CHECK(mixed[0][1] == Complex(-5.727e-17, 9.943e-17));

  CHECK_THROWS_AS(parse_points("1, 2, 3\n", 2), ParseError);
}
