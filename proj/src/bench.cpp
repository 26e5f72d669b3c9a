#include "polytrack/bench.hpp"

#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <utility>

#include "polytrack/random.hpp"

namespace polytrack {

namespace {

void enumerate_monomials(int var, int remaining, Monomial& current,
                         const std::function<void(const Monomial&)>& fn) {
  if (var == int(current.size())) {
    fn(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[var] = e;
    enumerate_monomials(var + 1, remaining - e, current, fn);
  }
  current[var] = 0;
}

}  // namespace

PolynomialSystem random_dense(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("random_dense requires n, d >= 1");
  std::mt19937_64 gen(seed);
  PolynomialSystem sys;
  for (int v = 0; v < n; ++v) sys.variables.push_back("x" + std::to_string(v + 1));
  for (int i = 0; i < n; ++i) {
    Polynomial p(n);
    Monomial m(n, 0);
    enumerate_monomials(0, d, m, [&](const Monomial& mono) { p.add_term(mono, complex_gaussian(gen)); });
    sys.polys.push_back(std::move(p));
  }
  return sys;
}

PolynomialSystem katsura(int n) {
  if (n < 1) throw std::invalid_argument("katsura requires n >= 1");
  const int m = n - 1;
  PolynomialSystem sys;
  for (int v = 0; v < n; ++v) sys.variables.push_back("u" + std::to_string(v));

  auto unit = [&](int v) {
    Monomial mono(n, 0);
    mono[v] = 1;
    return mono;
  };

  // quadratic convolution equations: sum_{j=-m..m} u_|j| u_|i-j| = u_i
  for (int i = 0; i < m; ++i) {
    Polynomial p(n);
    for (int j = -m; j <= m; ++j) {
      const int a = std::abs(j);
      const int b = std::abs(i - j);
      if (a > m || b > m) continue;
      Monomial mono(n, 0);
      mono[a] += 1;
      mono[b] += 1;
      p.add_term(mono, 1.0);
    }
    p.add_term(unit(i), -1.0);
    sys.polys.push_back(std::move(p));
  }

  // linear normalization: u_0 + 2 sum_{j>=1} u_j = 1
  Polynomial linear(n);
  linear.add_term(unit(0), 1.0);
  for (int j = 1; j <= m; ++j) linear.add_term(unit(j), 2.0);
  linear.add_term(Monomial(n, 0), -1.0);
  sys.polys.push_back(std::move(linear));
  return sys;
}

GevpInstance gevp_from_matrices(const ComplexMatrix& a, const ComplexMatrix& b,
                                ComplexVector normalization) {
  const int n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("pencil matrices must be square and of equal size");
  if (int(normalization.size()) != n)
    throw std::invalid_argument("normalization vector size mismatch");
  for (const Complex& c : normalization)
    if (c == 0.0) throw std::invalid_argument("normalization entries must be nonzero");

  GevpInstance out;
  out.a = a;
  out.b = b;
  out.normalization = normalization;

  const int nvars = n + 1;  // v1..vn, lambda
  for (int v = 0; v < n; ++v) out.target.variables.push_back("v" + std::to_string(v + 1));
  out.target.variables.push_back("lambda");
  out.start.variables = out.target.variables;

  auto pencil_row = [&](int i, const ComplexMatrix& ma, const ComplexMatrix& mb) {
    Polynomial p(nvars);
    for (int j = 0; j < n; ++j) {
      Monomial lin(nvars, 0);
      lin[j] = 1;
      p.add_term(lin, ma(i, j));
      Monomial quad(nvars, 0);
      quad[j] = 1;
      quad[n] = 1;  // lambda * v_j
      p.add_term(quad, -mb(i, j));
    }
    return p;
  };
  auto normalization_row = [&]() {
    Polynomial p(nvars);
    for (int j = 0; j < n; ++j) {
      Monomial lin(nvars, 0);
      lin[j] = 1;
      p.add_term(lin, normalization[j]);
    }
    p.add_term(Monomial(nvars, 0), -1.0);
    return p;
  };

  ComplexMatrix a0(n, n), b0(n, n);
  for (int i = 0; i < n; ++i) {
    a0(i, i) = double(i + 1);
    b0(i, i) = 1.0;
  }
  for (int i = 0; i < n; ++i) {
    out.target.polys.push_back(pencil_row(i, a, b));
    out.start.polys.push_back(pencil_row(i, a0, b0));
  }
  out.target.polys.push_back(normalization_row());
  out.start.polys.push_back(normalization_row());

  for (int k = 0; k < n; ++k) {
    ComplexVector point(nvars, 0.0);
    point[k] = 1.0 / normalization[k];
    point[n] = double(k + 1);  // eigenvalue of the start pencil
    out.start_solutions.push_back(std::move(point));
  }
  return out;
}

GevpInstance gevp(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gevp requires n >= 1");
  std::mt19937_64 gen(seed);
  ComplexMatrix a(n, n), b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = complex_gaussian(gen);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = complex_gaussian(gen);
  ComplexVector c(n);
  for (int j = 0; j < n; ++j) {
    // redraw tiny entries: start solutions scale as 1/c_j
    do c[j] = complex_gaussian(gen);
    while (std::abs(c[j]) < 1e-3);
  }
  return gevp_from_matrices(a, b, std::move(c));
}

}  // namespace polytrack
