#include "polytrack/polynomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace polytrack {

int monomial_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  const int da = monomial_degree(a);
  const int db = monomial_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Polynomial Polynomial::constant(int var_count, Complex value) {
  Polynomial p(var_count);
  p.add_term(Monomial(var_count, 0), value);
  return p;
}

Polynomial Polynomial::variable(int var_count, int index) {
  if (index < 0 || index >= var_count) throw std::invalid_argument("variable index out of range");
  Monomial m(var_count, 0);
  m[index] = 1;
  Polynomial p(var_count);
  p.add_term(m, 1.0);
  return p;
}

void Polynomial::add_term(const Monomial& exponents, Complex coefficient) {
  if (int(exponents.size()) != var_count_)
    throw std::invalid_argument("monomial length does not match variable count");
  for (int e : exponents)
    if (e < 0) throw std::invalid_argument("negative exponent");

  auto it = terms_.find(exponents);
  if (it == terms_.end()) {
    if (coefficient == 0.0) return;
    terms_.emplace(exponents, coefficient);
    degree_ = std::max(degree_, monomial_degree(exponents));
    return;
  }
  it->second += coefficient;
  if (it->second == 0.0) {
    const int gone = monomial_degree(it->first);
    terms_.erase(it);
    if (gone == degree_) recompute_degree();
  }
}

void Polynomial::recompute_degree() {
  degree_ = 0;
  for (const auto& [m, c] : terms_) degree_ = std::max(degree_, monomial_degree(m));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  if (var_count_ != rhs.var_count_) throw std::invalid_argument("variable count mismatch");
  Polynomial out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
  if (var_count_ != rhs.var_count_) throw std::invalid_argument("variable count mismatch");
  Polynomial out = *this;
  for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(var_count_);
  for (const auto& [m, c] : terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (var_count_ != rhs.var_count_) throw std::invalid_argument("variable count mismatch");
  Polynomial out(var_count_);
  Monomial sum(var_count_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      for (int i = 0; i < var_count_; ++i) sum[i] = ma[i] + mb[i];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial result = Polynomial::constant(var_count_, 1.0);
  Polynomial base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return var_count_ == rhs.var_count_ && terms_ == rhs.terms_;
}

Complex Polynomial::evaluate(std::span<const Complex> x) const {
  if (int(x.size()) != var_count_) throw std::invalid_argument("point dimension mismatch");
  Complex sum = 0.0;
  for (const auto& [m, c] : terms_) {
    Complex term = c;
    for (int i = 0; i < var_count_; ++i)
      for (int k = 0; k < m[i]; ++k) term *= x[i];
    sum += term;
  }
  return sum;
}

ComplexVector evaluate_system(const PolynomialSystem& sys, std::span<const Complex> x) {
  ComplexVector out;
  out.reserve(sys.polys.size());
  for (const Polynomial& p : sys.polys) out.push_back(p.evaluate(x));
  return out;
}

std::uint64_t total_degree(const PolynomialSystem& sys) {
  if (!sys.is_square()) throw std::invalid_argument("total degree requires a square system");
  std::uint64_t product = 1;
  for (const Polynomial& p : sys.polys) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial in system");
    const std::uint64_t d = std::uint64_t(p.degree());
    if (d != 0 && product > std::numeric_limits<std::uint64_t>::max() / d)
      throw std::overflow_error("total degree overflow");
    product *= d;
  }
  return product;
}

}  // namespace polytrack
