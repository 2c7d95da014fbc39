#include "rftforge/calc.hpp"

#include "rftforge/corpus.hpp"
#include "rftforge/errors.hpp"

#include <cctype>
#include <string>

namespace rftforge {

namespace {

constexpr int max_expr_depth = 64;

[[noreturn]] void parse_fail(std::size_t offset, const std::string& why) {
    throw Error(Errc::parse_error, "offset " + std::to_string(offset) + ": " + why, offset);
}

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;

    char peek(std::size_t ahead = 0) const {
        return pos + ahead < src.size() ? src[pos + ahead] : '\0';
    }
    bool eof() const { return pos >= src.size(); }
    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

struct LexedLiteral {
    Decimal value;
    int frac_digits = 0; // decimal places as written, before "%" scaling
};

// '$'? digits[,ddd]* ['.' digits*] '%'?  |  '$'? '.' digits+ '%'?
LexedLiteral lex_literal(Cursor& c) {
    const std::size_t start = c.pos;
    if (c.peek() == '$') {
        ++c.pos;
        if (!is_digit(c.peek()) && c.peek() != '.')
            parse_fail(c.pos, "expected number after '$'");
    }

    std::string int_digits;
    while (is_digit(c.peek())) int_digits.push_back(c.src[c.pos++]);

    // Thousands grouping: leading group of 1-3 digits, then ",ddd" groups.
    if (!int_digits.empty() && int_digits.size() <= 3) {
        while (c.peek() == ',' && is_digit(c.peek(1)) && is_digit(c.peek(2)) &&
               is_digit(c.peek(3))) {
            ++c.pos;
            int_digits.push_back(c.src[c.pos++]);
            int_digits.push_back(c.src[c.pos++]);
            int_digits.push_back(c.src[c.pos++]);
            if (is_digit(c.peek())) parse_fail(c.pos, "malformed thousands grouping");
        }
    }

    std::string frac_digits;
    if (c.peek() == '.') {
        // Leading-dot fractions require digits; "12." is allowed.
        if (int_digits.empty() && !is_digit(c.peek(1))) parse_fail(start, "expected number");
        ++c.pos;
        while (is_digit(c.peek())) frac_digits.push_back(c.src[c.pos++]);
    }
    if (int_digits.empty() && frac_digits.empty()) parse_fail(start, "expected number");

    int exp = -static_cast<int>(frac_digits.size());
    if (c.peek() == '%') {
        ++c.pos;
        exp -= 2;
    }

    LexedLiteral lit;
    lit.value = Decimal::parse(int_digits + frac_digits).scale_pow10(exp);
    lit.frac_digits = static_cast<int>(frac_digits.size());
    return lit;
}

struct Parsed {
    ExprPtr node;
    int depth = 0;
};

void check_depth(int depth, std::size_t offset) {
    if (depth > max_expr_depth) parse_fail(offset, "expression too deep");
}

Parsed parse_sum(Cursor& c, int nesting);

Parsed parse_primary(Cursor& c, int nesting) {
    c.skip_ws();
    if (c.eof()) parse_fail(c.pos, "unexpected end of expression");
    if (c.peek() == '(') {
        check_depth(nesting + 1, c.pos);
        ++c.pos;
        Parsed inner = parse_sum(c, nesting + 1);
        c.skip_ws();
        if (c.peek() != ')') parse_fail(c.pos, "expected ')'");
        ++c.pos;
        return inner;
    }
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::literal;
    node->literal = lex_literal(c).value;
    return {std::move(node), 1};
}

Parsed parse_factor(Cursor& c, int nesting) {
    c.skip_ws();
    if (c.peek() == '-') {
        const std::size_t at = c.pos;
        check_depth(nesting + 1, at);
        ++c.pos;
        Parsed sub = parse_factor(c, nesting + 1);
        auto node = std::make_unique<Expr>();
        node->kind = Expr::Kind::negate;
        node->lhs = std::move(sub.node);
        check_depth(sub.depth + 1, at);
        return {std::move(node), sub.depth + 1};
    }
    return parse_primary(c, nesting);
}

Parsed parse_product(Cursor& c, int nesting) {
    Parsed acc = parse_factor(c, nesting);
    for (;;) {
        c.skip_ws();
        const char op = c.peek();
        if (op != '*' && op != '/') return acc;
        const std::size_t at = c.pos;
        ++c.pos;
        Parsed rhs = parse_factor(c, nesting);
        auto node = std::make_unique<Expr>();
        node->kind = op == '*' ? Expr::Kind::mul : Expr::Kind::div;
        node->lhs = std::move(acc.node);
        node->rhs = std::move(rhs.node);
        acc.node = std::move(node);
        acc.depth = std::max(acc.depth, rhs.depth) + 1;
        check_depth(acc.depth, at);
    }
}

Parsed parse_sum(Cursor& c, int nesting) {
    Parsed acc = parse_product(c, nesting);
    for (;;) {
        c.skip_ws();
        const char op = c.peek();
        if (op != '+' && op != '-') return acc;
        const std::size_t at = c.pos;
        ++c.pos;
        Parsed rhs = parse_product(c, nesting);
        auto node = std::make_unique<Expr>();
        node->kind = op == '+' ? Expr::Kind::add : Expr::Kind::sub;
        node->lhs = std::move(acc.node);
        node->rhs = std::move(rhs.node);
        acc.node = std::move(node);
        acc.depth = std::max(acc.depth, rhs.depth) + 1;
        check_depth(acc.depth, at);
    }
}

const Decimal& overflow_limit() {
    static const Decimal limit(1, 30);
    return limit;
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::unverified: return "Unverified";
        case Verdict::correct: return "Correct";
        case Verdict::wrong_answer: return "WrongAnswer";
        case Verdict::wrong_calculation: return "WrongCalculation";
        case Verdict::unparseable: return "Unparseable";
    }
    return "Unverified";
}

Verdict verdict_from_string(std::string_view s) {
    if (s == "Unverified") return Verdict::unverified;
    if (s == "Correct") return Verdict::correct;
    if (s == "WrongAnswer") return Verdict::wrong_answer;
    if (s == "WrongCalculation") return Verdict::wrong_calculation;
    if (s == "Unparseable") return Verdict::unparseable;
    throw Error(Errc::data_error, "unknown verdict \"" + std::string(s) + "\"");
}

std::vector<EquationAnnotation> extract_annotations(std::string_view text) {
    std::vector<EquationAnnotation> out;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t open = text.find("<<", pos);
        if (open == std::string_view::npos) break;

        EquationAnnotation a;
        a.begin = open;
        const std::size_t close = text.find(">>", open + 2);
        if (close == std::string_view::npos) {
            a.raw = std::string(text.substr(open + 2));
            a.end = text.size();
            out.push_back(std::move(a));
            break;
        }
        a.raw = std::string(text.substr(open + 2, close - open - 2));
        a.end = close + 2;

        int depth = 0;
        std::size_t eq_at = std::string::npos;
        int eq_count = 0;
        for (std::size_t i = 0; i < a.raw.size(); ++i) {
            const char ch = a.raw[i];
            if (ch == '(') ++depth;
            else if (ch == ')') --depth;
            else if (ch == '=' && depth == 0) {
                ++eq_count;
                if (eq_at == std::string::npos) eq_at = i;
            }
        }
        if (eq_count == 1) {
            a.lhs_src = a.raw.substr(0, eq_at);
            a.rhs_src = a.raw.substr(eq_at + 1);
            a.well_formed = true;
        }
        out.push_back(std::move(a));
        pos = close + 2;
    }
    return out;
}

ExprPtr parse_expression(std::string_view src) {
    Cursor c{src};
    Parsed p = parse_sum(c, 0);
    c.skip_ws();
    if (!c.eof()) parse_fail(c.pos, "unexpected character");
    return std::move(p.node);
}

Decimal eval_expr(const Expr& e) {
    Decimal v;
    switch (e.kind) {
        case Expr::Kind::literal: v = e.literal; break;
        case Expr::Kind::negate: v = -eval_expr(*e.lhs); break;
        case Expr::Kind::add: v = eval_expr(*e.lhs) + eval_expr(*e.rhs); break;
        case Expr::Kind::sub: v = eval_expr(*e.lhs) - eval_expr(*e.rhs); break;
        case Expr::Kind::mul: v = eval_expr(*e.lhs) * eval_expr(*e.rhs); break;
        case Expr::Kind::div: v = Decimal::div(eval_expr(*e.lhs), eval_expr(*e.rhs)); break;
    }
    if (v.abs() > overflow_limit())
        throw Error(Errc::overflow, "|" + v.to_string() + "| > 10^30");
    return v;
}

EquationVerdict verify_equation(const EquationAnnotation& a, const VerifyOptions& opts) {
    if (!a.well_formed) return EquationVerdict::unparseable;

    // The right side must be a plain literal (optionally signed).
    Decimal stated;
    int frac_digits = 0;
    try {
        Cursor c{a.rhs_src};
        c.skip_ws();
        bool negative = false;
        if (c.peek() == '-' || c.peek() == '+') {
            negative = c.peek() == '-';
            ++c.pos;
        }
        LexedLiteral lit = lex_literal(c);
        c.skip_ws();
        if (!c.eof()) return EquationVerdict::unparseable;
        stated = negative ? -lit.value : lit.value;
        frac_digits = lit.frac_digits;
    } catch (const Error&) {
        return EquationVerdict::unparseable;
    }

    Decimal evaluated;
    try {
        evaluated = eval_expr(*parse_expression(a.lhs_src));
    } catch (const Error&) {
        return EquationVerdict::unparseable;
    }

    // Rounding-aware: half an ulp of the stated decimal places, with a
    // relative fallback for values rounded in significant digits.
    const Decimal ulp_tol(5, -(frac_digits + 1));
    const Decimal rel_tol = stated.abs() * opts.rel_tol;
    const Decimal tol = ulp_tol >= rel_tol ? ulp_tol : rel_tol;
    const Decimal diff = (evaluated - stated).abs();
    return diff <= tol ? EquationVerdict::correct : EquationVerdict::incorrect;
}

Verdict verify_path(SampledPath& p, const Decimal& gold, const VerifyOptions& opts) {
    std::optional<Decimal> answer;
    try {
        answer = extract_final_answer(p.text);
    } catch (const Error&) {
    }
    p.answer = answer;

    bool any_unparseable = false;
    bool any_incorrect = false;
    for (const EquationAnnotation& a : p.annotations) {
        switch (verify_equation(a, opts)) {
            case EquationVerdict::unparseable: any_unparseable = true; break;
            case EquationVerdict::incorrect: any_incorrect = true; break;
            case EquationVerdict::correct: break;
        }
    }

    if (!answer || any_unparseable) p.verdict = Verdict::unparseable;
    else if ((*answer - gold).abs() > opts.answer_tol) p.verdict = Verdict::wrong_answer;
    else if (any_incorrect) p.verdict = Verdict::wrong_calculation;
    else p.verdict = Verdict::correct;
    return p.verdict;
}

} // namespace rftforge
