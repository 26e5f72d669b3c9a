#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polytrack/polynomial.hpp"

namespace polytrack {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// System file format: the first significant line is `ring x, y, ...`; every
/// following `poly <expr>` line is one equation; `#` starts a comment.
/// Expressions use + - * ^ and parentheses; exponents must be literal
/// non-negative integers; `i` is the reserved imaginary unit, so `3.5i` and
/// `0.6+0.8*i` are complex literals.
PolynomialSystem parse_system(std::string_view text);

/// A single constant expression ("1", "-3i", "0.6+0.8*i", ...).
Complex parse_complex(std::string_view text);

/// One point per line, coordinates separated by commas.
std::vector<ComplexVector> parse_points(std::string_view text, int dimension);

std::string format_real(double value);      // 17 significant digits, round-trip exact
std::string format_complex(Complex value);  // canonical a+bi
std::string format_point(std::span<const Complex> x);

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& variables);

/// Canonical form: terms in graded-lexicographic order, coefficients with 17
/// significant digits. parse_system(print_system(sys)) reproduces the term
/// maps exactly.
std::string print_system(const PolynomialSystem& sys);

}  // namespace polytrack
