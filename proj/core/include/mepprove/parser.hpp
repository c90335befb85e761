#pragma once

#include <optional>
#include <string_view>

#include "mepprove/ast.hpp"

namespace mepprove {

/// Parses "expr cmp expr". Accepts "−", "≥", "≤", "×", "÷" as well as their
/// ASCII spellings, and "e^(...)", "e^x", "e^a" as sugar for exp(...).
/// Throws ParseError with a byte offset on any violation.
Inequality parse_inequality(std::string_view text);

/// Parses a single expression with no comparator.
Expr parse_expression(std::string_view text);

/// c0 + cx*x + ca*a + cxa*a*x; the only shape allowed inside exp().
struct BilinearForm {
  Rational c0, cx, ca, cxa;
};

/// Nullopt when `e` is not of that shape with rational coefficients.
std::optional<BilinearForm> bilinear_form(const Expr& e);

}  // namespace mepprove
