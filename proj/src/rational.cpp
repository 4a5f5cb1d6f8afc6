#include "veesys/rational.hpp"

#include <cctype>

#include "veesys/error.hpp"

namespace veesys {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t begin = 0;
  while (begin < text.size() && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  std::size_t end = text.size();
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string_view body = text.substr(begin, end - begin);

  bool negative = false;
  std::size_t offset = begin;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
    ++offset;
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num))
    throw ParseError(ParseError::Kind::Syntax, offset, "expected an integer numerator");
  if (!all_digits(den))
    throw ParseError(ParseError::Kind::Syntax, offset + slash + 1,
                     "expected an integer denominator");

  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0)
    throw ParseError(ParseError::Kind::DivisionByZero, offset + slash + 1, "zero denominator");
  Rational q(negative ? Integer(-n) : n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace veesys
