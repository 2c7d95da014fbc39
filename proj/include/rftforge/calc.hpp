#pragma once

#include "rftforge/decimal.hpp"
#include "rftforge/types.hpp"

#include <memory>
#include <string_view>
#include <vector>

namespace rftforge {

// Arithmetic expression tree. Parentheses are folded into the structure.
struct Expr {
    enum class Kind { literal, negate, add, sub, mul, div };

    Kind kind = Kind::literal;
    Decimal literal;
    std::unique_ptr<Expr> lhs;
    std::unique_ptr<Expr> rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

enum class EquationVerdict { correct, incorrect, unparseable };

struct VerifyOptions {
    // Relative fallback term of the equation tolerance:
    // |eval(lhs) - rhs| <= max(0.5 * 10^-p, rel_tol * |rhs|)
    // where p is the number of decimal places written in rhs_src.
    Decimal rel_tol = Decimal(1, -4);
    // Final answer comparison tolerance (|answer - gold| <= answer_tol).
    Decimal answer_tol = Decimal(1, -6);
};

// All non-overlapping <<...>> spans, left to right. Malformed spans
// (unclosed, zero or multiple top-level "=") come back with
// well_formed=false so verify_path can classify the path.
std::vector<EquationAnnotation> extract_annotations(std::string_view text);

// Grammar: + - over * /, left-associative, unary minus, parentheses.
// Literals: optional "$", digits with optional thousands commas, optional
// fraction (leading-dot form allowed), optional trailing "%" (scales by
// 0.01). Throws Errc::parse_error with a byte offset.
ExprPtr parse_expression(std::string_view src);

// Exact +,-,*; division rounds half-even to 12 significant digits.
// Throws Errc::division_by_zero, Errc::overflow (|value| > 10^30).
Decimal eval_expr(const Expr& e);

EquationVerdict verify_equation(const EquationAnnotation& a,
                                const VerifyOptions& opts = {});

// Assigns p.verdict (and p.answer when extractable). Precedence:
// unparseable > wrong_answer > wrong_calculation > correct.
// Requires annotations already extracted.
Verdict verify_path(SampledPath& p, const Decimal& gold,
                    const VerifyOptions& opts = {});

} // namespace rftforge
