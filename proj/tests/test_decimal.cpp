#include "rftforge/decimal.hpp"
#include "rftforge/errors.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <random>

using rftforge::Decimal;
using rftforge::Errc;
using rftforge::Error;

TEST_CASE("parse and normalize") {
    CHECK(Decimal::parse("10").to_string() == "10");
    CHECK(Decimal::parse("10.0").to_string() == "10");
    CHECK(Decimal::parse("0.50").to_string() == "0.5");
    CHECK(Decimal::parse("-3.25").to_string() == "-3.25");
    CHECK(Decimal::parse(".15").to_string() == "0.15");
    CHECK(Decimal::parse("0").to_string() == "0");
    CHECK(Decimal::parse("000.000").to_string() == "0");
    CHECK_THROWS_AS((void)Decimal::parse(""), Error);
    CHECK_THROWS_AS((void)Decimal::parse("1e5"), Error);
    CHECK_THROWS_AS((void)Decimal::parse("12a"), Error);
}

TEST_CASE("exact add sub mul") {
    const Decimal a = Decimal::parse("0.1");
    const Decimal b = Decimal::parse("0.2");
    CHECK((a + b).to_string() == "0.3");
    CHECK((b - a).to_string() == "0.1");
    CHECK((a * b).to_string() == "0.02");
    CHECK((a - a).is_zero());

    // Wide exponent gaps stay exact.
    const Decimal big(1, 29);
    const Decimal tiny(1, -12);
    CHECK((big + tiny - big) == tiny);
}

TEST_CASE("division rounds half-even to 12 significant digits") {
    CHECK(Decimal::div(Decimal::from_int(12), Decimal::from_int(60)).to_string() == "0.2");
    CHECK(Decimal::div(Decimal::from_int(50), Decimal::from_int(60)).to_string() ==
          "0.833333333333");
    CHECK(Decimal::div(Decimal::from_int(1), Decimal::from_int(3)).to_string() ==
          "0.333333333333");
    CHECK(Decimal::div(Decimal::from_int(2), Decimal::from_int(3)).to_string() ==
          "0.666666666667");
    CHECK(Decimal::div(Decimal::from_int(-1), Decimal::from_int(8)).to_string() == "-0.125");
    // Ties go to the even digit: 0.18/16 = 0.01125 at 3 digits -> 0.0112.
    CHECK(Decimal::div(Decimal::parse("0.18"), Decimal::from_int(16), 3).to_string() ==
          "0.0112");
    CHECK(Decimal::div(Decimal::parse("0.24"), Decimal::from_int(16), 3).to_string() ==
          "0.015");
    // Tie with an odd digit rounds up: 227/200 = 1.135 -> 1.14 at 3 digits.
    CHECK(Decimal::div(Decimal::from_int(227), Decimal::from_int(200), 3).to_string() ==
          "1.14");
    CHECK_THROWS_AS((void)Decimal::div(Decimal::from_int(1), Decimal()), Error);
}

TEST_CASE("comparisons") {
    CHECK(Decimal::parse("10") == Decimal::parse("10.00"));
    CHECK(Decimal::parse("0.8333") < Decimal::parse("0.833333333333"));
    CHECK(Decimal::parse("-1") < Decimal::parse("0.0001"));
    CHECK(Decimal::parse("100").compare(Decimal::parse("99.999")) > 0);
}

TEST_CASE("division against rational oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        const long long n = static_cast<long long>(rng() % 2000001) - 1000000;
        const long long d = static_cast<long long>(rng() % 999999) + 1;
        const Decimal q = Decimal::div(Decimal::from_int(n), Decimal::from_int(d));
        const oracle::rational exact = oracle::rational(n, d);
        const oracle::rational got = oracle::to_rational(q);
        const oracle::rational diff = boost::multiprecision::abs(got - exact);
        // Half an ulp at 12 significant digits is within 5e-12 relative.
        CHECK(diff * 1'000'000'000'000LL <= boost::multiprecision::abs(exact) * 5);
    }
}

TEST_CASE("to_double") {
    CHECK(Decimal::parse("0.5").to_double() == doctest::Approx(0.5));
    CHECK(Decimal::parse("-1000").to_double() == doctest::Approx(-1000.0));
}
