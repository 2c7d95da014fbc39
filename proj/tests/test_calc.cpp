#include "rftforge/calc.hpp"

#include "rftforge/errors.hpp"

#include "doctest.h"
#include "expr_fuzz.hpp"
#include "golden_paths.hpp"
#include "oracles.hpp"

#include <random>
#include <sstream>

using namespace rftforge;

namespace {

Decimal eval_str(const std::string& src) { return eval_expr(*parse_expression(src)); }

SampledPath make_path(const std::string& text, const std::string& qid = "q1") {
    SampledPath p;
    p.question_id = qid;
    p.model_id = "m";
    p.text = text;
    p.annotations = extract_annotations(text);
    return p;
}

} // namespace

TEST_CASE("extract_annotations spans and order") {
    const auto anns = extract_annotations("a <<1+2=3>> b <<4*5=20>> c");
    REQUIRE(anns.size() == 2);
    CHECK(anns[0].raw == "1+2=3");
    CHECK(anns[0].lhs_src == "1+2");
    CHECK(anns[0].rhs_src == "3");
    CHECK(anns[0].well_formed);
    CHECK(anns[1].raw == "4*5=20");
    CHECK(anns[0].begin < anns[0].end);
    CHECK(anns[0].end <= anns[1].begin);

    CHECK(extract_annotations("no delimiters here").empty());

    const auto unclosed = extract_annotations("x <<1+2=3");
    REQUIRE(unclosed.size() == 1);
    CHECK_FALSE(unclosed[0].well_formed);

    const auto no_eq = extract_annotations("<<1+2>>");
    REQUIRE(no_eq.size() == 1);
    CHECK_FALSE(no_eq[0].well_formed);

    const auto two_eq = extract_annotations("<<1=2=3>>");
    REQUIRE(two_eq.size() == 1);
    CHECK_FALSE(two_eq[0].well_formed);
}

TEST_CASE("parser precedence and literal forms") {
    CHECK(eval_str("1+2*3") == Decimal::from_int(7));
    CHECK(eval_str("(1+2)*3") == Decimal::from_int(9));
    CHECK(eval_str("12*(50/60)").to_string() == "9.999999999996");
    CHECK(eval_str("80,000*.15") == Decimal::from_int(12000));
    CHECK(eval_str("$1,234.50+$0.50") == Decimal::from_int(1235));
    CHECK(eval_str("50%*200") == Decimal::from_int(100));
    CHECK(eval_str("-3--2") == Decimal::from_int(-1));
    CHECK(eval_str(" 2 *  ( 3 + 4 ) ") == Decimal::from_int(14));
    CHECK(eval_str("10-2-3") == Decimal::from_int(5)); // left associative
}

TEST_CASE("parser rejections carry offsets") {
    auto offset_of = [](const std::string& src) {
        try {
            (void)parse_expression(src);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::parse_error);
            return e.offset();
        }
        return Error::npos;
    };
    CHECK(offset_of("1+") == 2);
    CHECK(offset_of("(1+2") == 4);
    CHECK(offset_of("1 2") == 2);
    CHECK(offset_of("x+1") == 0);
    CHECK(offset_of("3km") == 1);
    CHECK(offset_of("1,0000") != Error::npos);
    CHECK(offset_of("") == 0);

    // Deep nesting and long chains are rejected rather than recursed into.
    CHECK_THROWS_AS((void)parse_expression(std::string(100, '(') + "1" + std::string(100, ')')),
                    Error);
    std::string chain = "1";
    for (int i = 0; i < 100; ++i) chain += "+1";
    CHECK_THROWS_AS((void)parse_expression(chain), Error);
}

TEST_CASE("eval guards") {
    CHECK_THROWS_AS((void)eval_str("1/0"), Error);
    CHECK_THROWS_AS((void)eval_str("1/(2-2)"), Error);
    // 10^31 overflows, 10^29 does not.
    const std::string big = "100000000000000000000000000000"; // 10^29
    CHECK_NOTHROW((void)eval_str(big));
    CHECK_THROWS_AS((void)eval_str(big + "*100"), Error);
}

TEST_CASE("verify_equation tolerance") {
    auto verdict_of = [](const std::string& raw) {
        const auto anns = extract_annotations("<<" + raw + ">>");
        REQUIRE(anns.size() == 1);
        return verify_equation(anns[0]);
    };
    CHECK(verdict_of("50/60=0.8333") == EquationVerdict::correct);
    CHECK(verdict_of("12*0.8333=10") == EquationVerdict::correct);
    CHECK(verdict_of("2+2=5") == EquationVerdict::incorrect);
    CHECK(verdict_of("2+2=4") == EquationVerdict::correct);
    CHECK(verdict_of("1/3=0.33") == EquationVerdict::correct);
    CHECK(verdict_of("1/3=0.34") == EquationVerdict::incorrect);
    CHECK(verdict_of("8*.25=2") == EquationVerdict::correct);
    // rhs must be a plain literal
    CHECK(verdict_of("2+2=2+2") == EquationVerdict::unparseable);
    CHECK(verdict_of("x+2=4") == EquationVerdict::unparseable);
    CHECK(verdict_of("2+2=") == EquationVerdict::unparseable);
    // negative stated results are literals too
    CHECK(verdict_of("3-8=-5") == EquationVerdict::correct);
}

TEST_CASE("verify_equation ignores whitespace in lhs") {
    std::mt19937_64 rng(21);
    const std::string base = "12*(50/60)";
    for (int trial = 0; trial < 200; ++trial) {
        // Spaces at token boundaries only; splitting a number is a
        // different expression, not a whitespace edit.
        std::string spaced;
        for (char c : base) {
            const bool boundary = !std::isdigit(static_cast<unsigned char>(c));
            if (boundary && rng() % 2) spaced += ' ';
            spaced += c;
            if (boundary && rng() % 2) spaced += ' ';
        }
        const auto anns = extract_annotations("<<" + spaced + "=10>>");
        REQUIRE(anns.size() == 1);
        CHECK(verify_equation(anns[0]) == EquationVerdict::correct);
    }
}

TEST_CASE("verify_path verdict precedence") {
    const Decimal gold = Decimal::from_int(10);

    SampledPath ok = make_path("5+5 = <<5+5=10>>10. #### 10");
    CHECK(verify_path(ok, gold) == Verdict::correct);
    REQUIRE(ok.answer.has_value());
    CHECK(*ok.answer == gold);

    SampledPath wrong_gold = make_path("5+5 = <<5+5=10>>10. #### 10");
    CHECK(verify_path(wrong_gold, Decimal::from_int(11)) == Verdict::wrong_answer);

    SampledPath bad_calc = make_path("first <<2+2=5>>5 then <<5+5=10>>10. #### 10");
    CHECK(verify_path(bad_calc, gold) == Verdict::wrong_calculation);

    // Unparseable outranks wrong answer and wrong calculation.
    SampledPath broken = make_path("<<2+2=5>>5 and <<3?=1>>..., #### 12");
    CHECK(verify_path(broken, gold) == Verdict::unparseable);

    SampledPath no_marker = make_path("<<5+5=10>>10 and that is all");
    CHECK(verify_path(no_marker, gold) == Verdict::unparseable);
    CHECK_FALSE(no_marker.answer.has_value());

    // Annotation-free paths verify on the answer alone.
    SampledPath plain = make_path("the answer is clear. #### 10");
    CHECK(verify_path(plain, gold) == Verdict::correct);
}

TEST_CASE("golden paths all verify Correct") {
    const Decimal rate_gold = Decimal::from_int(10);
    for (const char* text : golden::rate_paths) {
        SampledPath p = make_path(text);
        CHECK(verify_path(p, rate_gold) == Verdict::correct);
    }
    const Decimal enroll_gold = Decimal::from_int(19);
    for (const char* text : golden::enrollment_paths) {
        SampledPath p = make_path(text);
        CHECK(verify_path(p, enroll_gold) == Verdict::correct);
    }
}

TEST_CASE("evaluator matches rational oracle on random expressions") {
    fuzz::FuzzStats stats;
    CHECK(fuzz::run_eval_fuzz(4242, 10000, stats));
    CHECK(stats.checked == 10000);
    // Ill-conditioned draws (cancellation beyond what 12-digit division
    // can deliver) must stay a small minority of the population.
    CHECK(stats.skipped_ill_conditioned < stats.attempts / 10);
}
