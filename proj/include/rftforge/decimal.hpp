#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace rftforge {

using bigint = boost::multiprecision::cpp_int;

// Arbitrary-precision decimal: value = coefficient * 10^exponent.
// Addition, subtraction and multiplication are exact; division rounds
// half-even to a fixed number of significant digits (12 by default).
class Decimal {
public:
    static constexpr int div_significant_digits = 12;

    Decimal() = default;
    Decimal(long long coefficient, int exponent);

    // Plain decimal literal: [+-]? ( digits [ "." digits? ] | "." digits ).
    // No exponent notation, no separators. Throws Errc::answer_unparseable.
    static Decimal parse(std::string_view text);

    static Decimal from_int(long long v) { return Decimal(v, 0); }

    Decimal operator+(const Decimal& rhs) const;
    Decimal operator-(const Decimal& rhs) const;
    Decimal operator*(const Decimal& rhs) const;
    Decimal operator-() const;

    // Rounded division; throws Errc::division_by_zero.
    static Decimal div(const Decimal& num, const Decimal& den,
                       int significant_digits = div_significant_digits);

    Decimal abs() const;
    // value * 10^e, exact.
    Decimal scale_pow10(int e) const;

    bool is_zero() const { return coeff_ == 0; }
    int sign() const { return coeff_ == 0 ? 0 : (coeff_ < 0 ? -1 : 1); }

    int compare(const Decimal& rhs) const;
    bool operator==(const Decimal& rhs) const { return compare(rhs) == 0; }
    bool operator!=(const Decimal& rhs) const { return compare(rhs) != 0; }
    bool operator<(const Decimal& rhs) const { return compare(rhs) < 0; }
    bool operator<=(const Decimal& rhs) const { return compare(rhs) <= 0; }
    bool operator>(const Decimal& rhs) const { return compare(rhs) > 0; }
    bool operator>=(const Decimal& rhs) const { return compare(rhs) >= 0; }

    // Normalized plain string, no exponent notation: "0.2", "-3", "1000".
    std::string to_string() const;
    double to_double() const;

    const bigint& coefficient() const { return coeff_; }
    int exponent() const { return exp_; }

private:
    bigint coeff_{0};
    int exp_ = 0;

    void normalize();
};

} // namespace rftforge
