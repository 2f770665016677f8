#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "orlicz/errors.hpp"
#include "orlicz/log_real.hpp"

namespace orlicz {

// Immutable expression tree over one variable t.
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' number)?
//   base   := number | 't' | 'ln' '(' expr ')' | 'exp' '(' expr ')' | '(' expr ')'
// Numbers are plain decimal literals; no sign, no exponent notation.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Ln, Exp };
    Op op;
    double value = 0.0;   // Const payload, or Pow exponent
    ExprPtr a, b;
};

ExprPtr parse_expression(std::string_view text);

// IEEE semantics: intermediate inf/nan propagate, division by zero allowed.
double eval(const ExprNode& n, double t);

// Log-domain evaluation with sign tracking; throws DomainError where the
// real-valued result is undefined (ln of nonpositive, fractional power of
// a negative) and OverflowError if exp() cannot be realized.
LogReal eval_log(const ExprNode& n, const LogReal& t);

} // namespace orlicz
