#include "polytrack/parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <utility>

namespace polytrack {

namespace {

constexpr long kMaxExponent = 1 << 20;

enum class Tok {
  Ident,
  Number,
  Imaginary,  // numeric literal immediately followed by `i`, e.g. 3.5i
  ImagUnit,   // bare `i`
  Plus,
  Minus,
  Star,
  Caret,
  LParen,
  RParen,
  Comma,
  Newline,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  bool integral = false;  // digits only; eligible as a ^ exponent
  int line = 1;
  int column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t pos = 0;
  int line = 1, column = 1;

  auto advance = [&](std::size_t k = 1) {
    pos += k;
    column += int(k);
  };
  auto push = [&](Tok kind, std::string text, int col) {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.line = line;
    t.column = col;
    out.push_back(std::move(t));
  };

  while (pos < src.size()) {
    const char c = src[pos];
    if (c == '#') {
      while (pos < src.size() && src[pos] != '\n') advance();
      continue;
    }
    if (c == '\n') {
      push(Tok::Newline, "\n", column);
      ++pos;
      ++line;
      column = 1;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    const int start_col = column;
    if (digit(c) || (c == '.' && pos + 1 < src.size() && digit(src[pos + 1]))) {
      const std::size_t start = pos;
      bool integral = true;
      while (pos < src.size() && digit(src[pos])) advance();
      if (pos < src.size() && src[pos] == '.') {
        integral = false;
        advance();
        while (pos < src.size() && digit(src[pos])) advance();
      }
      if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
        std::size_t look = pos + 1;
        if (look < src.size() && (src[look] == '+' || src[look] == '-')) ++look;
        if (look < src.size() && digit(src[look])) {
          integral = false;
          advance(look - pos);
          while (pos < src.size() && digit(src[pos])) advance();
        }
      }
      std::string text(src.substr(start, pos - start));
      double value = 0.0;
      const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || p != text.data() + text.size())
        throw ParseError("invalid numeric literal '" + text + "'", line, start_col);
      Tok kind = Tok::Number;
      if (pos < src.size() && src[pos] == 'i' && !(pos + 1 < src.size() && ident_char(src[pos + 1]))) {
        kind = Tok::Imaginary;
        advance();
      }
      Token t;
      t.kind = kind;
      t.text = std::move(text);
      t.value = value;
      t.integral = integral;
      t.line = line;
      t.column = start_col;
      out.push_back(std::move(t));
      continue;
    }
    if (ident_start(c)) {
      const std::size_t start = pos;
      while (pos < src.size() && ident_char(src[pos])) advance();
      std::string text(src.substr(start, pos - start));
      push(text == "i" ? Tok::ImagUnit : Tok::Ident, std::move(text), start_col);
      continue;
    }
    switch (c) {
      case '+': push(Tok::Plus, "+", start_col); break;
      case '-': push(Tok::Minus, "-", start_col); break;
      case '*': push(Tok::Star, "*", start_col); break;
      case '^': push(Tok::Caret, "^", start_col); break;
      case '(': push(Tok::LParen, "(", start_col); break;
      case ')': push(Tok::RParen, ")", start_col); break;
      case ',': push(Tok::Comma, ",", start_col); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
    }
    advance();
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = column;
  out.push_back(std::move(end));
  return out;
}

struct Parser {
  const std::vector<Token>& toks;
  std::size_t pos = 0;
  const std::vector<std::string>* variables = nullptr;
  int nvars = 0;

  const Token& cur() const { return toks[pos]; }
  bool at(Tok k) const { return cur().kind == k; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().column);
  }

  void skip_newlines() {
    while (at(Tok::Newline)) ++pos;
  }

  int lookup_variable(const Token& t) const {
    if (variables != nullptr) {
      for (std::size_t k = 0; k < variables->size(); ++k)
        if ((*variables)[k] == t.text) return int(k);
    }
    throw ParseError("unknown identifier '" + t.text + "'", t.line, t.column);
  }

  long parse_exponent() {
    if (at(Tok::Minus) || !at(Tok::Number) || !cur().integral)
      fail("exponent must be a non-negative integer literal");
    long value = 0;
    for (char c : cur().text) {
      value = value * 10 + (c - '0');
      if (value > kMaxExponent) fail("exponent too large");
    }
    ++pos;
    if (at(Tok::Caret)) {  // right-associative tower of integer literals
      ++pos;
      const long e = parse_exponent();
      long result = 1;
      for (long k = 0; k < e; ++k) {
        result *= value;
        if (result > kMaxExponent) fail("exponent too large");
      }
      value = result;
    }
    return value;
  }

  Polynomial parse_atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Number:
        ++pos;
        return Polynomial::constant(nvars, Complex(t.value, 0.0));
      case Tok::Imaginary:
        ++pos;
        return Polynomial::constant(nvars, Complex(0.0, t.value));
      case Tok::ImagUnit:
        ++pos;
        return Polynomial::constant(nvars, Complex(0.0, 1.0));
      case Tok::Ident: {
        const int index = lookup_variable(t);
        ++pos;
        return Polynomial::variable(nvars, index);
      }
      case Tok::LParen: {
        ++pos;
        Polynomial inner = parse_expr();
        if (!at(Tok::RParen)) fail("expected ')'");
        ++pos;
        return inner;
      }
      default:
        fail("expected an expression");
    }
  }

  Polynomial parse_power() {
    Polynomial base = parse_atom();
    if (at(Tok::Caret)) {
      ++pos;
      const long e = parse_exponent();
      base = base.pow(int(e));
    }
    return base;
  }

  Polynomial parse_unary() {
    if (at(Tok::Minus)) {
      ++pos;
      return -parse_unary();
    }
    return parse_power();
  }

  Polynomial parse_term() {
    Polynomial p = parse_unary();
    while (at(Tok::Star)) {
      ++pos;
      p = p * parse_unary();
    }
    return p;
  }

  Polynomial parse_expr() {
    Polynomial p = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool minus = at(Tok::Minus);
      ++pos;
      Polynomial q = parse_term();
      p = minus ? p - q : p + q;
    }
    return p;
  }
};

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

PolynomialSystem parse_system(std::string_view text) {
  const std::vector<Token> toks = lex(text);
  Parser p{toks};
  p.skip_newlines();

  if (!(p.at(Tok::Ident) && p.cur().text == "ring")) p.fail("expected 'ring' declaration");
  ++p.pos;

  PolynomialSystem sys;
  for (;;) {
    if (p.at(Tok::ImagUnit)) p.fail("'i' is reserved for the imaginary unit");
    if (!p.at(Tok::Ident)) p.fail("expected a variable name");
    for (const std::string& seen : sys.variables)
      if (seen == p.cur().text) p.fail("duplicate variable '" + p.cur().text + "'");
    sys.variables.push_back(p.cur().text);
    ++p.pos;
    if (p.at(Tok::Comma)) {
      ++p.pos;
      continue;
    }
    break;
  }
  if (!p.at(Tok::Newline) && !p.at(Tok::End)) p.fail("expected end of line after 'ring'");

  p.variables = &sys.variables;
  p.nvars = int(sys.variables.size());

  for (;;) {
    p.skip_newlines();
    if (p.at(Tok::End)) break;
    if (!(p.at(Tok::Ident) && p.cur().text == "poly")) p.fail("expected a 'poly' line");
    ++p.pos;
    sys.polys.push_back(p.parse_expr());
    if (!p.at(Tok::Newline) && !p.at(Tok::End)) p.fail("unexpected trailing input after expression");
  }
  return sys;
}

Complex parse_complex(std::string_view text) {
  const std::vector<Token> toks = lex(text);
  Parser p{toks};
  p.nvars = 0;
  p.skip_newlines();
  Polynomial value = p.parse_expr();
  p.skip_newlines();
  if (!p.at(Tok::End)) p.fail("unexpected trailing input after complex literal");
  if (value.is_zero()) return Complex(0.0, 0.0);
  return value.terms().begin()->second;
}

std::vector<ComplexVector> parse_points(std::string_view text, int dimension) {
  const std::vector<Token> toks = lex(text);
  Parser p{toks};
  p.nvars = 0;
  std::vector<ComplexVector> points;
  for (;;) {
    p.skip_newlines();
    if (p.at(Tok::End)) break;
    const int line = p.cur().line;
    ComplexVector point;
    for (;;) {
      Polynomial value = p.parse_expr();
      point.push_back(value.is_zero() ? Complex(0.0, 0.0) : value.terms().begin()->second);
      if (p.at(Tok::Comma)) {
        ++p.pos;
        continue;
      }
      break;
    }
    if (!p.at(Tok::Newline) && !p.at(Tok::End)) p.fail("unexpected trailing input after point");
    if (int(point.size()) != dimension)
      throw ParseError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                           std::to_string(dimension),
                       line, 1);
    points.push_back(std::move(point));
  }
  return points;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_complex(Complex value) {
  const double re = value.real();
  const double im = value.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  std::string s = format_real(re);
  s += im < 0 ? '-' : '+';
  s += format_real(std::abs(im));
  s += 'i';
  return s;
}

std::string format_point(std::span<const Complex> x) {
  std::string s = "(";
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) s += ", ";
    s += format_complex(x[k]);
  }
  s += ")";
  return s;
}

namespace {

std::string monomial_text(const Monomial& m, const std::vector<std::string>& variables) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0) continue;
    if (!s.empty()) s += '*';
    s += variables[k];
    if (m[k] > 1) {
      s += '^';
      s += std::to_string(m[k]);
    }
  }
  return s;
}

}  // namespace

std::string print_polynomial(const Polynomial& p, const std::vector<std::string>& variables) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const std::string mono = monomial_text(m, variables);
    bool negative = false;
    std::string piece;
    if (c.imag() == 0.0) {
      negative = c.real() < 0;
      const double a = std::abs(c.real());
      if (mono.empty())
        piece = format_real(a);
      else if (a == 1.0)
        piece = mono;
      else
        piece = format_real(a) + "*" + mono;
    } else if (c.real() == 0.0) {
      negative = c.imag() < 0;
      const double b = std::abs(c.imag());
      const std::string coef = (b == 1.0) ? "i" : format_real(b) + "i";
      piece = mono.empty() ? coef : coef + "*" + mono;
    } else {
      const std::string inner = format_complex(c);
      piece = mono.empty() ? inner : "(" + inner + ")*" + mono;
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? "-" : "+";
    out += piece;
    first = false;
  }
  return out;
}

std::string print_system(const PolynomialSystem& sys) {
  std::string out = "ring ";
  for (std::size_t k = 0; k < sys.variables.size(); ++k) {
    if (k > 0) out += ", ";
    out += sys.variables[k];
  }
  out += '\n';
  for (const Polynomial& p : sys.polys) {
    out += "poly ";
    out += print_polynomial(p, sys.variables);
    out += '\n';
  }
  return out;
}

}  // namespace polytrack
