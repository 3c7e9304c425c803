#pragma once

// Recursive-descent parser shared by the expression, matrix and piecewise grammars.

#include <string>
#include <string_view>
#include <vector>

#include "symsys/coefficient_field.hpp"
#include "symsys/errors.hpp"
#include "symsys/expression.hpp"

namespace symsys::detail {

class DslParser {
 public:
  explicit DslParser(std::string_view text) : text_(text) {}

  Expression expression();
  std::vector<std::vector<Expression>> matrix();
  Interval interval();

  void skip_space();
  bool at_end();
  bool consume(char c);
  void expect(char c);
  /// Consume keyword `word` if it is the next identifier.
  bool consume_keyword(std::string_view word);

  [[noreturn]] void fail(const std::string& message) const;

 private:
  Expression sum();
  Expression product();
  Expression unary();
  Expression power();
  Expression primary();
  int integer_exponent();
  double endpoint();

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(std::size_t offset) const {
    return pos_ + offset < text_.size() ? text_[pos_ + offset] : '\0';
  }
  void advance();
  std::string identifier();
  double number_literal();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace symsys::detail
