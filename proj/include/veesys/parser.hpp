#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "veesys/param_function.hpp"

namespace veesys {

/// Parses a scalar expression over the named parameters.
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' nonneg-integer)?
///   base   := integer | integer '/' integer | name | '(' expr ')' | '-' base
///
/// Whitespace is insignificant. Errors are reported as ParseError carrying the
/// offending character offset (syntax, unknown symbol, division by zero).
ParamFunction parse_scalar(std::string_view text, const std::vector<std::string>& params);

}  // namespace veesys
