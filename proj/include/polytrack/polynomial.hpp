#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "polytrack/types.hpp"

namespace polytrack {

using Monomial = std::vector<int>;  // exponent per variable

int monomial_degree(const Monomial& m);

// Canonical term order: higher total degree first, then lexicographically
// larger exponent vector first (x^2 before x*y before y^2).
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using TermMap = std::map<Monomial, Complex, GrlexGreater>;

/// Multivariate polynomial in expanded (dense) form: a term map holding only
/// nonzero coefficients. The zero polynomial has degree 0.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int var_count) : var_count_(var_count) {}

  static Polynomial constant(int var_count, Complex value);
  static Polynomial variable(int var_count, int index);

  int var_count() const { return var_count_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  /// Accumulates into the term map; exact-zero coefficients are dropped.
  void add_term(const Monomial& exponents, Complex coefficient);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial pow(int exponent) const;

  bool operator==(const Polynomial& rhs) const;

  /// Term-by-term evaluation of the dense form. Deliberately naive; this is
  /// the reference the compiled programs are checked against.
  Complex evaluate(std::span<const Complex> x) const;

 private:
  void recompute_degree();

  int var_count_ = 0;
  int degree_ = 0;
  TermMap terms_;
};

struct PolynomialSystem {
  std::vector<std::string> variables;
  std::vector<Polynomial> polys;

  int var_count() const { return int(variables.size()); }
  int size() const { return int(polys.size()); }
  bool is_square() const { return !polys.empty() && polys.size() == variables.size(); }
};

ComplexVector evaluate_system(const PolynomialSystem& sys, std::span<const Complex> x);

/// Bezout number: the product of the equation degrees.
std::uint64_t total_degree(const PolynomialSystem& sys);

}  // namespace polytrack
