#include "doctest.h"
#include "polytrack/bench.hpp"
#include "polytrack/parser.hpp"
#include "polytrack/tracker.hpp"
#include "support/oracles.hpp"

using namespace polytrack;

TEST_CASE("random dense systems carry every monomial up to the degree") {
  const PolynomialSystem sys = random_dense(2, 3, 1);
  REQUIRE(sys.size() == 2);
  for (const Polynomial& p : sys.polys) {
    CHECK(p.term_count() == 10);  // C(5, 3)
    CHECK(p.degree() == 3);
  }
  const PolynomialSystem big = random_dense(4, 5, 2);
  for (const Polynomial& p : big.polys) CHECK(p.term_count() == 126);  // C(9, 5)
}

TEST_CASE("random dense generation is deterministic per seed") {
  const PolynomialSystem a = random_dense(3, 4, 77);
  const PolynomialSystem b = random_dense(3, 4, 77);
  const PolynomialSystem c = random_dense(3, 4, 78);
  REQUIRE(a.size() == b.size());
  bool all_equal = true, any_differs = false;
  for (int k = 0; k < a.size(); ++k) {
    all_equal = all_equal && a.polys[k] == b.polys[k];
    any_differs = any_differs || !(a.polys[k] == c.polys[k]);
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("a random linear equation has exactly one solution") {
  const SolveResult res = solve_system(random_dense(1, 1, 3), 3);
  CHECK(res.total_paths == 1);
  REQUIRE(res.solutions.size() == 1);
  CHECK(res.solutions[0].residual <= 1e-10);
}

TEST_CASE("random dense 5^4 has total degree 1024") {
  CHECK(total_degree(random_dense(5, 4, 4)) == 1024);
}

TEST_CASE("katsura 1 is u0 - 1") {
  const PolynomialSystem sys = katsura(1);
  REQUIRE(sys.size() == 1);
  CHECK(print_polynomial(sys.polys[0], sys.variables) == "u0-1");
}

TEST_CASE("katsura 2 matches the classical formulation") {
  const PolynomialSystem sys = katsura(2);
  const PolynomialSystem expected =
      parse_system("ring u0, u1\npoly u0^2+2*u1^2-u0\npoly u0+2*u1-1");
  REQUIRE(sys.size() == 2);
  CHECK(sys.polys[0] == expected.polys[0]);
  CHECK(sys.polys[1] == expected.polys[1]);
}

TEST_CASE("katsura degree profile: one linear, n-1 quadratics") {
  for (int n = 2; n <= 8; ++n) {
    const PolynomialSystem sys = katsura(n);
    REQUIRE(sys.size() == n);
    for (int k = 0; k + 1 < n; ++k) CHECK(sys.polys[k].degree() == 2);
    CHECK(sys.polys[n - 1].degree() == 1);
  }
}

TEST_CASE("katsura 11 and 12 total degrees extrapolate the table") {
  CHECK(total_degree(katsura(11)) == 1024);
  CHECK(total_degree(katsura(12)) == 2048);
}

TEST_CASE("katsura solution counts for small n") {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SolveResult res = solve_system(katsura(n), seed);
      CHECK(res.failed_paths == 0);
      CHECK(res.solutions.size() == (std::size_t(1) << (n - 1)));
      for (const Solution& s : res.solutions) CHECK(s.residual <= 1e-8);
    }
  }
}

TEST_CASE("gevp start solutions are exact and counted") {
  const GevpInstance inst = gevp(35, 9);
  REQUIRE(inst.start_solutions.size() == 35);
  for (const ComplexVector& s : inst.start_solutions)
    CHECK(inf_norm(evaluate_system(inst.start, s)) <= 1e-12);
  CHECK(inst.target.var_count() == 36);
  CHECK(inst.target.size() == 36);
}

TEST_CASE("gevp generation is deterministic per seed") {
  const GevpInstance a = gevp(4, 5);
  const GevpInstance b = gevp(4, 5);
  for (int k = 0; k < a.target.size(); ++k) CHECK(a.target.polys[k] == b.target.polys[k]);
}

TEST_CASE("injected diagonal pencil recovers its eigenvalues") {
  ComplexMatrix a(2, 2), b(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  b(0, 0) = b(1, 1) = 1.0;
  const GevpInstance inst = gevp_from_matrices(a, b, ComplexVector{Complex(1, 0), Complex(1, 0)});
  const SolveResult res = solve_with_start(inst.start, inst.target, inst.start_solutions,
                                           random_gamma(3), TrackerSettings{});
  REQUIRE(res.solutions.size() == 2);
  ComplexVector lambdas;
  for (const Solution& s : res.solutions) lambdas.push_back(s.point.back());
  CHECK(oracles::multisets_match(lambdas, ComplexVector{Complex(1, 0), Complex(2, 0)}, 1e-8));
}

TEST_CASE("gevp eigenvalues match the determinant-expansion oracle for n = 8") {
  const GevpInstance inst = gevp(8, 21);
  const SolveResult res = solve_with_start(inst.start, inst.target, inst.start_solutions,
                                           random_gamma(22), TrackerSettings{});
  REQUIRE(res.solutions.size() == 8);
  CHECK(res.failed_paths == 0);
  ComplexVector lambdas;
  for (const Solution& s : res.solutions) lambdas.push_back(s.point.back());
  const ComplexVector roots =
      oracles::durand_kerner(oracles::pencil_determinant_coefficients(inst.a, inst.b));
  CHECK(oracles::multisets_match(lambdas, roots, 1e-6));
}

TEST_CASE("gevp solutions satisfy the pencil and the normalization") {
  const GevpInstance inst = gevp(6, 33);
  const SolveResult res = solve_with_start(inst.start, inst.target, inst.start_solutions,
                                           random_gamma(34), TrackerSettings{});
  REQUIRE(res.solutions.size() == 6);
  const int n = 6;
  for (const Solution& s : res.solutions) {
    const Complex lambda = s.point.back();
    ComplexVector pencil(n, 0.0);
    Complex normalization = -1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j)
        pencil[i] += (inst.a(i, j) - lambda * inst.b(i, j)) * s.point[j];
      normalization += inst.normalization[i] * s.point[i];
    }
    CHECK(inf_norm(pencil) <= 1e-6);
    CHECK(std::abs(normalization) <= 1e-8);
  }
}

TEST_CASE("generators reject invalid sizes") {
  CHECK_THROWS_AS(random_dense(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_dense(2, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(katsura(0), std::invalid_argument);
  CHECK_THROWS_AS(gevp(0, 1), std::invalid_argument);
}
