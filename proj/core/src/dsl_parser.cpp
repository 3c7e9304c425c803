#include "dsl_parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

namespace symsys::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

void DslParser::fail(const std::string& message) const { throw SyntaxError(message, line_, column_); }

void DslParser::advance() {
  if (pos_ >= text_.size()) return;
  if (text_[pos_] == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  ++pos_;
}

void DslParser::skip_space() {
  while (pos_ < text_.size()) {
    const char c = text_[pos_];
    if (c == '#') {
      while (pos_ < text_.size() && text_[pos_] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else {
      break;
    }
  }
}

bool DslParser::at_end() {
  skip_space();
  return pos_ >= text_.size();
}

bool DslParser::consume(char c) {
  skip_space();
  if (peek() != c) return false;
  advance();
  return true;
}

void DslParser::expect(char c) {
  if (!consume(c)) {
    const char got = peek();
    fail(std::string("expected '") + c + "' but found " +
         (got == '\0' ? std::string("end of input") : "'" + std::string(1, got) + "'"));
  }
}

std::string DslParser::identifier() {
  std::string out;
  while (ident_char(peek())) {
    out.push_back(peek());
    advance();
  }
  return out;
}

bool DslParser::consume_keyword(std::string_view word) {
  skip_space();
  if (text_.substr(pos_, word.size()) != word) return false;
  if (ident_char(peek_at(word.size()))) return false;
  for (std::size_t k = 0; k < word.size(); ++k) advance();
  return true;
}

double DslParser::number_literal() {
  const std::size_t start = pos_;
  while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
  if (peek() == '.') {
    advance();
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
  }
  if ((peek() == 'e' || peek() == 'E') &&
      (std::isdigit(static_cast<unsigned char>(peek_at(1))) ||
       ((peek_at(1) == '+' || peek_at(1) == '-') && std::isdigit(static_cast<unsigned char>(peek_at(2)))))) {
    advance();
    if (peek() == '+' || peek() == '-') advance();
    while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
  }
  const std::string_view lexeme = text_.substr(start, pos_ - start);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), value);
  if (ec != std::errc() || ptr != lexeme.data() + lexeme.size()) fail("malformed number '" + std::string(lexeme) + "'");
  return value;
}

Expression DslParser::expression() { return sum(); }

Expression DslParser::sum() {
  Expression lhs = product();
  for (;;) {
    if (consume('+')) {
      lhs = lhs + product();
    } else if (consume('-')) {
      lhs = lhs - product();
    } else {
      return lhs;
    }
  }
}

Expression DslParser::product() {
  Expression lhs = unary();
  for (;;) {
    if (consume('*')) {
      lhs = lhs * unary();
    } else if (consume('/')) {
      lhs = lhs / unary();
    } else {
      return lhs;
    }
  }
}

Expression DslParser::unary() {
  if (consume('-')) return -unary();
  if (consume('+')) return unary();
  return power();
}

int DslParser::integer_exponent() {
  const bool paren = consume('(');
  skip_space();
  int sign = 1;
  if (consume('-')) {
    sign = -1;
  } else {
    consume('+');
  }
  skip_space();
  if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer literal");
  const double v = number_literal();
  if (v != std::floor(v) || v > 1000.0) fail("exponent must be an integer literal");
  if (paren) expect(')');
  return sign * static_cast<int>(v);
}

Expression DslParser::power() {
  Expression base = primary();
  if (consume('^')) {
    const int e = integer_exponent();
    return Expression::power(base, e);
  }
  return base;
}

Expression DslParser::primary() {
  skip_space();
  const char c = peek();
  if (c == '(') {
    advance();
    Expression inner = sum();
    expect(')');
    return inner;
  }
  if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek_at(1))))) {
    const double v = number_literal();
    if (peek() == 'i' && !ident_char(peek_at(1))) {
      advance();
      return Expression::constant({0.0, v});
    }
    return Expression::constant(v);
  }
  if (ident_start(c)) {
    const std::size_t line = line_;
    const std::size_t column = column_;
    const std::string name = identifier();
    if (name == "x") return Expression::variable();
    if (name == "i") return Expression::constant({0.0, 1.0});
    if (name == "pi") return Expression::constant(std::numbers::pi);
    static const std::pair<const char*, Function> table[] = {
        {"sin", Function::Sin},   {"cos", Function::Cos}, {"exp", Function::Exp},
        {"log", Function::Log},   {"sqrt", Function::Sqrt}, {"abs", Function::Abs},
        {"tanh", Function::Tanh}, {"sign", Function::Sign}};
    for (const auto& [fname, fn] : table) {
      if (name == fname) {
        expect('(');
        Expression arg = sum();
        expect(')');
        return Expression::call(fn, arg);
      }
    }
    throw SyntaxError("unknown identifier '" + name + "'", line, column);
  }
  if (c == '\0') fail("unexpected end of input");
  fail(std::string("unexpected character '") + c + "'");
}

std::vector<std::vector<Expression>> DslParser::matrix() {
  expect('[');
  std::vector<std::vector<Expression>> rows;
  do {
    expect('[');
    std::vector<Expression> row;
    do {
      row.push_back(sum());
    } while (consume(','));
    expect(']');
    if (!rows.empty() && row.size() != rows.front().size()) fail("ragged matrix: rows have different lengths");
    rows.push_back(std::move(row));
  } while (consume(','));
  expect(']');
  return rows;
}

double DslParser::endpoint() {
  skip_space();
  bool negative = false;
  if (consume('-')) {
    negative = true;
  } else {
    consume('+');
  }
  if (consume_keyword("inf")) return negative ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
  const Expression e = sum();
  if (!e.is_constant()) fail("interval endpoint must be a constant");
  const std::complex<double> v = e.evaluate(0.0);
  if (v.imag() != 0.0) fail("interval endpoint must be real");
  return negative ? -v.real() : v.real();
}

Interval DslParser::interval() {
  skip_space();
  Interval out;
  if (consume('[')) {
    out.left_closed = true;
  } else if (consume('(')) {
    out.left_closed = false;
  } else {
    fail("expected '[' or '(' to open an interval");
  }
  out.left = endpoint();
  expect(',');
  out.right = endpoint();
  if (consume(']')) {
    out.right_closed = true;
  } else if (consume(')')) {
    out.right_closed = false;
  } else {
    fail("expected ']' or ')' to close an interval");
  }
  if (std::isinf(out.left)) out.left_closed = false;
  if (std::isinf(out.right)) out.right_closed = false;
  if (!(out.left < out.right)) fail("interval must satisfy left < right");
  return out;
}

}  // namespace symsys::detail
