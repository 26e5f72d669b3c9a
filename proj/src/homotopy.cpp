#include "polytrack/homotopy.hpp"

#include <numbers>
#include <stdexcept>
#include <utility>

#include "polytrack/random.hpp"

namespace polytrack {

StartSystem total_degree_start(const PolynomialSystem& target) {
  if (!target.is_square())
    throw std::invalid_argument("total-degree start requires a square system");
  const int n = target.var_count();

  std::vector<int> degrees(n);
  for (int i = 0; i < n; ++i) {
    if (target.polys[i].is_zero())
      throw std::invalid_argument("zero polynomial in target system");
    degrees[i] = target.polys[i].degree();
    if (degrees[i] == 0)
      throw std::invalid_argument("constant polynomial in target system");
  }

  StartSystem out;
  out.system.variables = target.variables;
  for (int i = 0; i < n; ++i) {
    Polynomial p(n);
    Monomial m(n, 0);
    m[i] = degrees[i];
    p.add_term(m, 1.0);
    p.add_term(Monomial(n, 0), -1.0);
    out.system.polys.push_back(std::move(p));
  }

  // Roots of unity by angle, so residuals stay at rounding level for any d.
  std::vector<ComplexVector> roots(n);
  for (int i = 0; i < n; ++i) {
    roots[i].reserve(degrees[i]);
    for (int k = 0; k < degrees[i]; ++k) {
      const double angle = 2.0 * std::numbers::pi * double(k) / double(degrees[i]);
      roots[i].emplace_back(std::cos(angle), std::sin(angle));
    }
  }
  const std::uint64_t count = total_degree(target);
  out.solutions.reserve(count);
  std::vector<int> index(n, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    ComplexVector point(n);
    for (int i = 0; i < n; ++i) point[i] = roots[i][index[i]];
    out.solutions.push_back(std::move(point));
    for (int i = n - 1; i >= 0; --i) {  // odometer, last variable fastest
      if (++index[i] < degrees[i]) break;
      index[i] = 0;
    }
  }
  return out;
}

Complex random_gamma(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  return unit_complex(gen);
}

Homotopy::Homotopy(PolynomialSystem start, PolynomialSystem target, Complex gamma)
    : start_(std::move(start)), target_(std::move(target)), gamma_(gamma) {
  if (gamma_ == 0.0) throw std::invalid_argument("gamma must be nonzero");
  if (!start_.is_square() || !target_.is_square())
    throw std::invalid_argument("homotopy requires square systems");
  if (start_.variables != target_.variables)
    throw std::invalid_argument("start and target systems must share variables");
  start_program_ = SlpProgram::compile(start_).with_jacobian();
  target_program_ = SlpProgram::compile(target_).with_jacobian();
}

bool Homotopy::evaluate(std::span<const Complex> x, double t, HomotopyWorkspace& ws) const {
  if (!start_program_.evaluate(x, ws.start_ws)) return false;
  if (!target_program_.evaluate(x, ws.target_ws)) return false;
  const int n = dimension();
  const double omt = 1.0 - t;
  const Complex gt = gamma_ * t;
  ws.h.resize(n);
  ws.ht.resize(n);
  ws.hx.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const Complex g = ws.start_ws.values[i];
    const Complex f = ws.target_ws.values[i];
    ws.h[i] = omt * g + gt * f;
    ws.ht[i] = gamma_ * f - g;
    for (int j = 0; j < n; ++j)
      ws.hx(i, j) = omt * ws.start_ws.jacobian(i, j) + gt * ws.target_ws.jacobian(i, j);
  }
  return true;
}

}  // namespace polytrack
