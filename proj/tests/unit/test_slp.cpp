#include <random>

#include "doctest.h"
#include "polytrack/bench.hpp"
#include "polytrack/parser.hpp"
#include "polytrack/random.hpp"
#include "polytrack/slp.hpp"
#include "support/oracles.hpp"

using namespace polytrack;

TEST_CASE("classical Horner counts on a dense univariate polynomial") {
  const PolynomialSystem sys = parse_system("ring x\npoly x^2+x+1");
  const SlpProgram prog = SlpProgram::compile(sys);
  CHECK(prog.opcode_count(SlpOp::Mul) == 2);
  CHECK(prog.opcode_count(SlpOp::Add) == 2);

  SlpWorkspace ws;
  REQUIRE(prog.evaluate(ComplexVector{Complex(2, 0)}, ws));
  CHECK(ws.values[0] == Complex(7, 0));
}

TEST_CASE("dense univariate degree d costs exactly d multiplications and d additions") {
  for (int d = 1; d <= 9; ++d) {
    Polynomial p(1);
    for (int k = 0; k <= d; ++k) p.add_term({k}, double(k + 1));
    PolynomialSystem sys{{"x"}, {p}};
    const SlpProgram prog = SlpProgram::compile(sys);
    CHECK(prog.opcode_count(SlpOp::Mul) == std::size_t(d));
    CHECK(prog.opcode_count(SlpOp::Add) == std::size_t(d));
  }
}

TEST_CASE("bivariate factoring matches the dense evaluation") {
  const PolynomialSystem sys = parse_system("ring x, y\npoly x*y+x+y+1\npoly x+y");
  const SlpProgram prog = SlpProgram::compile(sys);
  SlpWorkspace ws;
  const ComplexVector at{Complex(1, 0), Complex(1, 0)};
  REQUIRE(prog.evaluate(at, ws));
  CHECK(ws.values[0] == Complex(4, 0));
  CHECK(ws.values[0] == sys.polys[0].evaluate(at));
}

TEST_CASE("a constant polynomial compiles to a single load") {
  PolynomialSystem sys{{"x"}, {Polynomial::constant(1, Complex(5, 0))}};
  const SlpProgram prog = SlpProgram::compile(sys);
  CHECK(prog.instruction_count() == 1);
  CHECK(prog.opcode_count(SlpOp::LoadConst) == 1);
  SlpWorkspace ws;
  REQUIRE(prog.evaluate(ComplexVector{Complex(123, -4)}, ws));
  CHECK(ws.values[0] == Complex(5, 0));
}

TEST_CASE("values and jacobian of the paper start system") {
  const PolynomialSystem sys = parse_system("ring x, y\npoly x^2-1\npoly y^2-1");
  const SlpProgram prog = SlpProgram::compile(sys).with_jacobian();
  SlpWorkspace ws;

  REQUIRE(prog.evaluate(ComplexVector{Complex(1, 0), Complex(-1, 0)}, ws));
  CHECK(ws.values[0] == Complex(0, 0));
  CHECK(ws.values[1] == Complex(0, 0));
  CHECK(ws.jacobian(0, 0) == Complex(2, 0));
  CHECK(ws.jacobian(0, 1) == Complex(0, 0));
  CHECK(ws.jacobian(1, 0) == Complex(0, 0));
  CHECK(ws.jacobian(1, 1) == Complex(-2, 0));

  REQUIRE(prog.evaluate(ComplexVector{Complex(1, 0), Complex(1, 0)}, ws));
  CHECK(ws.jacobian(0, 0) == Complex(2, 0));
  CHECK(ws.jacobian(1, 1) == Complex(2, 0));
}

TEST_CASE("derivative of x^2 at 3 is 6") {
  const PolynomialSystem sys = parse_system("ring x\npoly x^2");
  const SlpProgram prog = SlpProgram::compile(sys).with_jacobian();
  SlpWorkspace ws;
  REQUIRE(prog.evaluate(ComplexVector{Complex(3, 0)}, ws));
  CHECK(ws.jacobian(0, 0) == Complex(6, 0));
}

TEST_CASE("paper target system vanishes at (0, 1)") {
  const PolynomialSystem sys = parse_system("ring x, y\npoly x^2+(y-5)^2-16\npoly x*y");
  const SlpProgram prog = SlpProgram::compile(sys);
  SlpWorkspace ws;
  REQUIRE(prog.evaluate(ComplexVector{Complex(0, 0), Complex(1, 0)}, ws));
  CHECK(ws.values[0] == Complex(0, 0));
  CHECK(ws.values[1] == Complex(0, 0));
}

TEST_CASE("jacobian of a random dense system matches central finite differences") {
  std::mt19937_64 gen(31);
  const PolynomialSystem sys = random_dense(3, 4, 77);
  const SlpProgram prog = SlpProgram::compile(sys).with_jacobian();
  SlpWorkspace ws;
  for (int trial = 0; trial < 5; ++trial) {
    ComplexVector x(3);
    for (Complex& c : x) c = complex_gaussian(gen);
    REQUIRE(prog.evaluate(x, ws));
    const ComplexMatrix fd = oracles::fd_jacobian(sys, x, 1e-5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double rel = std::abs(ws.jacobian(i, j) - fd(i, j)) / (1.0 + std::abs(fd(i, j)));
        CHECK(rel <= 1e-6);
      }
  }
}

TEST_CASE("SLP values agree with dense evaluation on 100 random systems") {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + int(gen() % 4);
    const int d = 1 + int(gen() % 5);
    const PolynomialSystem sys = random_dense(n, d, gen());
    const SlpProgram prog = SlpProgram::compile(sys);
    SlpWorkspace ws;
    ComplexVector x(n);
    for (Complex& c : x) c = complex_gaussian(gen);
    REQUIRE(prog.evaluate(x, ws));
    for (int i = 0; i < n; ++i) {
      const Complex dense = sys.polys[i].evaluate(x);
      CHECK(std::abs(ws.values[i] - dense) <= 1e-12 * (1.0 + std::abs(dense)));
    }
  }
}

TEST_CASE("Horner multiplication count never exceeds the naive per-monomial count") {
  for (const auto& [name, sys] : oracles::corpus()) {
    CAPTURE(name);
    const SlpProgram prog = SlpProgram::compile(sys);
    CHECK(prog.opcode_count(SlpOp::Mul) <= oracles::naive_multiplication_count(sys));
  }
}

TEST_CASE("combined value+jacobian program stays within 5x of the value program") {
  std::vector<std::pair<std::string, PolynomialSystem>> benchmarks;
  benchmarks.emplace_back("random 5^4", random_dense(5, 4, 41));
  benchmarks.emplace_back("random 5^5", random_dense(5, 5, 42));
  benchmarks.emplace_back("katsura 11", katsura(11));
  benchmarks.emplace_back("katsura 12", katsura(12));
  benchmarks.emplace_back("gevp 35", gevp(35, 43).target);
  for (const auto& [name, sys] : benchmarks) {
    CAPTURE(name);
    const SlpProgram value = SlpProgram::compile(sys);
    const SlpProgram combined = value.with_jacobian();
    CHECK(combined.instruction_count() <= 5 * value.instruction_count());
  }
}

TEST_CASE("instructions only read earlier slots") {
  for (const auto& [name, sys] : oracles::corpus()) {
    CAPTURE(name);
    const SlpProgram prog = SlpProgram::compile(sys).with_jacobian();
    const auto& code = prog.instructions();
    for (std::size_t k = 0; k < code.size(); ++k) {
      if (code[k].op == SlpOp::LoadConst || code[k].op == SlpOp::LoadInput) continue;
      CHECK(code[k].a < std::int32_t(k));
      CHECK(code[k].b < std::int32_t(k));
    }
  }
}

TEST_CASE("overflow is reported instead of silent non-finite output") {
  const PolynomialSystem sys = parse_system("ring x\npoly x^8+1");
  const SlpProgram prog = SlpProgram::compile(sys);
  SlpWorkspace ws;
  CHECK_FALSE(prog.evaluate(ComplexVector{Complex(1e200, 0)}, ws));
  CHECK(prog.evaluate(ComplexVector{Complex(2, 0)}, ws));
}

TEST_CASE("workspaces are interchangeable across programs and reusable") {
  const PolynomialSystem a = parse_system("ring x\npoly x^2-1");
  const PolynomialSystem b = parse_system("ring x, y\npoly x*y\npoly x+y");
  const SlpProgram pa = SlpProgram::compile(a).with_jacobian();
  const SlpProgram pb = SlpProgram::compile(b).with_jacobian();
  SlpWorkspace ws;
  REQUIRE(pa.evaluate(ComplexVector{Complex(3, 0)}, ws));
  CHECK(ws.values[0] == Complex(8, 0));
  REQUIRE(pb.evaluate(ComplexVector{Complex(2, 0), Complex(5, 0)}, ws));
  CHECK(ws.values[0] == Complex(10, 0));
  CHECK(ws.values[1] == Complex(7, 0));
  REQUIRE(pa.evaluate(ComplexVector{Complex(3, 0)}, ws));
  CHECK(ws.values[0] == Complex(8, 0));
}

TEST_CASE("dump lists one instruction per line with output maps") {
  const PolynomialSystem sys = parse_system("ring x\npoly x^2+x+1");
  const SlpProgram prog = SlpProgram::compile(sys);
  const std::string text = prog.dump();
  CHECK(text.find(":= mul(") != std::string::npos);
  CHECK(text.find("# values:") != std::string::npos);
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == prog.instruction_count() + 1);
}
