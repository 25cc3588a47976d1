#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qsde/ncpoly.hpp"

namespace qsde {

// Surface syntax: rationals, the imaginary unit i, variables q/p (single
// mode) or q<k>/p<k>, + - * / ^, parentheses, and cos/sin/exp applications.
// Multiplication is order-preserving; the algebra is noncommutative.
struct ExprNode {
  enum class Kind { number, imag_unit, variable, neg, add, sub, mul, div, pow, func };
  enum class Func { cos, sin, exp };

  Kind kind;
  Rational value;              // number
  VarId var{VarKind::position, 1};  // variable
  int exponent = 0;            // pow
  Func func = Func::cos;       // func
  std::unique_ptr<ExprNode> lhs, rhs;
};

using ExprAst = std::unique_ptr<ExprNode>;

// Parses source text for an m-mode system. Variable mode indices are
// validated here; q and p alias q1 and p1 only when m = 1.
ExprAst parse(const std::string& src, int modes);

// Lowers an AST to a normal-ordered polynomial. Analytic functions require a
// degree cap and expand to exact-rational Maclaurin truncations; the cap is
// consumed by the expansion and the returned polynomial is uncapped.
NcPoly elaborate(const ExprNode& ast, int modes, std::optional<int> cap);

NcPoly parse_poly(const std::string& src, int modes,
                  std::optional<int> cap = std::nullopt);

// Parses an expression that must elaborate to a constant.
Scalar parse_scalar(const std::string& src);

}  // namespace qsde
