#pragma once

#include <string>

#include "p1/numeric.hpp"

namespace p1::cli {

/// Evaluates an arithmetic expression in binary128: numbers, + - * /,
/// parentheses, unary minus, exp(), sqrt(), ln(), and the constants pi, e.
/// Throws DomainError on a syntax error or an invalid argument.
Real eval_expr(const std::string& text);

}  // namespace p1::cli
