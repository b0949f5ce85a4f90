#pragma once

// Text format for differential polynomials:
//
//   expr     := ["-"] term (("+" | "-") term)*
//   term     := factor ("*" factor)*
//   factor   := atom ("^" integer)?
//   atom     := rational | "zeta" | "p" | "t" | var | "(" expr ")"
//   var      := "x" index? deriv
//   deriv    := "'"* | "^(" digits ")"
//   rational := digits ("/" digits)?
//
// "+", "-", "*" associate to the left and "^" binds tightest. Implicit
// multiplication ("3x") is rejected. With one variable, "x" and "x1" name
// the same variable; with several, the index is required.

#include "tropdiff/diffpoly.hpp"
#include "tropdiff/initial.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tropdiff {

struct SyntaxTree {
  enum class Kind { Number, Zeta, Prime, T, Variable, Sum, Difference, Product, Power, Negate };

  Kind kind = Kind::Number;
  Rational number;        // Number
  unsigned var_index = 0;  // Variable: 1-based as written, 0 when omitted
  unsigned var_order = 0;  // Variable
  unsigned long exponent = 0;  // Power
  std::vector<SyntaxTree> children;
  std::size_t position = 0;
};

SyntaxTree parse_expression(std::string_view src);
/// Minimal-parenthesis rendering; print(parse(print(e))) == print(e).
std::string print_tree(const SyntaxTree& tree);

struct ParseContext {
  Backend backend;
  unsigned nvars = 1;
  std::size_t truncation = 0;
};

/// Parses and normalizes. Coefficients are series of length truncation + 1;
/// a t-power beyond the truncation raises TruncationExhausted.
DiffPoly parse_poly(std::string_view src, const ParseContext& ctx);
DiffPoly to_diffpoly(const SyntaxTree& tree, const ParseContext& ctx);

std::string print_monomial(const ExponentMatrix& m, unsigned nvars);
std::string print_poly(const DiffPoly& f);
std::string print_poly(const TropDiffPoly& g);
std::string print_poly(const TropPoly1& g);
std::string print_poly(const ResiduePoly& g);
std::string print_poly(const ConstPoly& g);

}  // namespace tropdiff
