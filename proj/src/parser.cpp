#include "veesys/parser.hpp"

#include <algorithm>
#include <cctype>

#include "veesys/error.hpp"

namespace veesys {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const std::vector<std::string>& params)
      : text_(text), params_(params) {}

  ParamFunction run() {
    ParamFunction value = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what, ParseError::Kind kind = ParseError::Kind::Syntax) const {
    throw ParseError(kind, pos_, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ParamFunction expr() {
    ParamFunction acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  ParamFunction term() {
    ParamFunction acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        skip_space();
        const std::size_t at = pos_;
        ParamFunction divisor = factor();
        if (divisor.is_zero()) throw ParseError(ParseError::Kind::DivisionByZero, at, "division by zero");
        acc /= divisor;
      } else {
        return acc;
      }
    }
  }

  ParamFunction factor() {
    ParamFunction b = base();
    if (accept('^')) {
      skip_space();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a non-negative integer exponent");
      const Integer k = integer();
      if (k > 64) fail("exponent too large");
      b = b.pow(static_cast<unsigned>(k.get_ui()));
    }
    return b;
  }

  Integer integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  ParamFunction base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      ParamFunction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return ParamFunction(Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (std::find(params_.begin(), params_.end(), name) == params_.end())
        throw ParseError(ParseError::Kind::UnknownSymbol, start, "unknown symbol '" + name + "'");
      return ParamFunction::variable(name);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& params_;
  std::size_t pos_ = 0;
};

}  // namespace

ParamFunction parse_scalar(std::string_view text, const std::vector<std::string>& params) {
  return ExpressionParser(text, params).run();
}

}  // namespace veesys
