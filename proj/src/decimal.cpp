#include "rftforge/decimal.hpp"

#include "rftforge/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace rftforge {

namespace {

bigint pow10_big(int e) {
    return boost::multiprecision::pow(bigint(10), static_cast<unsigned>(e));
}

int digit_count(const bigint& v) {
    if (v == 0) return 1;
    std::string s = bigint(boost::multiprecision::abs(v)).str();
    return static_cast<int>(s.size());
}

} // namespace

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::malformed_record: return "MalformedRecord";
        case Errc::answer_missing: return "AnswerMissing";
        case Errc::answer_unparseable: return "AnswerUnparseable";
        case Errc::fraction_out_of_range: return "FractionOutOfRange";
        case Errc::parse_error: return "ParseError";
        case Errc::division_by_zero: return "DivisionByZero";
        case Errc::overflow: return "Overflow";
        case Errc::mixed_question: return "MixedQuestion";
        case Errc::unknown_question: return "UnknownQuestion";
        case Errc::insufficient_samples: return "InsufficientSamples";
        case Errc::degenerate_input: return "DegenerateInput";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::data_error: return "DataError";
        case Errc::io_error: return "IoError";
    }
    return "UnknownError";
}

Decimal::Decimal(long long coefficient, int exponent)
    : coeff_(coefficient), exp_(exponent) {
    normalize();
}

void Decimal::normalize() {
    if (coeff_ == 0) {
        exp_ = 0;
        return;
    }
    while (coeff_ % 10 == 0) {
        coeff_ /= 10;
        ++exp_;
    }
}

Decimal Decimal::parse(std::string_view text) {
    auto fail = [&](std::string why) -> Decimal {
        throw Error(Errc::answer_unparseable,
                    "\"" + std::string(text) + "\": " + std::move(why));
    };

    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }

    std::string digits;
    int frac_digits = 0;
    bool saw_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        digits.push_back(text[i]);
        saw_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            digits.push_back(text[i]);
            ++frac_digits;
            saw_digit = true;
        }
    }
    if (!saw_digit) return fail("no digits");
    if (i != text.size()) return fail("trailing characters");

    // Leading zeros would make cpp_int read the string as octal.
    const std::size_t nz = digits.find_first_not_of('0');
    Decimal d;
    d.coeff_ = bigint(nz == std::string::npos ? "0" : digits.substr(nz));
    if (negative) d.coeff_ = -d.coeff_;
    d.exp_ = -frac_digits;
    d.normalize();
    return d;
}

Decimal Decimal::operator+(const Decimal& rhs) const {
    Decimal r;
    if (exp_ == rhs.exp_) {
        r.coeff_ = coeff_ + rhs.coeff_;
        r.exp_ = exp_;
    } else if (exp_ > rhs.exp_) {
        r.coeff_ = coeff_ * pow10_big(exp_ - rhs.exp_) + rhs.coeff_;
        r.exp_ = rhs.exp_;
    } else {
        r.coeff_ = coeff_ + rhs.coeff_ * pow10_big(rhs.exp_ - exp_);
        r.exp_ = exp_;
    }
    r.normalize();
    return r;
}

Decimal Decimal::operator-(const Decimal& rhs) const { return *this + (-rhs); }

Decimal Decimal::operator-() const {
    Decimal r = *this;
    r.coeff_ = -r.coeff_;
    return r;
}

Decimal Decimal::operator*(const Decimal& rhs) const {
    Decimal r;
    r.coeff_ = coeff_ * rhs.coeff_;
    r.exp_ = exp_ + rhs.exp_;
    r.normalize();
    return r;
}

Decimal Decimal::div(const Decimal& num, const Decimal& den, int significant_digits) {
    if (den.coeff_ == 0) throw Error(Errc::division_by_zero, "division by zero");
    if (num.coeff_ == 0) return Decimal();

    const bool negative = (num.coeff_ < 0) != (den.coeff_ < 0);
    const bigint a = boost::multiprecision::abs(num.coeff_);
    const bigint b = boost::multiprecision::abs(den.coeff_);

    // Scale the numerator so the integer quotient lands on exactly
    // `significant_digits` digits, then round half-even on the remainder.
    int shift = significant_digits - (digit_count(a) - digit_count(b));
    bigint q, rem, divisor;
    auto divide_at = [&](int sh) {
        const bigint scaled = sh >= 0 ? a * pow10_big(sh) : a;
        divisor = sh >= 0 ? b : b * pow10_big(-sh);
        q = scaled / divisor;
        rem = scaled - q * divisor;
    };
    divide_at(shift);
    if (digit_count(q) > significant_digits) divide_at(--shift);

    const bigint twice = rem * 2;
    if (twice > divisor || (twice == divisor && q % 2 != 0)) ++q;

    Decimal r;
    r.coeff_ = negative ? -q : q;
    r.exp_ = num.exp_ - den.exp_ - shift;
    r.normalize();
    return r;
}

Decimal Decimal::abs() const {
    Decimal r = *this;
    if (r.coeff_ < 0) r.coeff_ = -r.coeff_;
    return r;
}

Decimal Decimal::scale_pow10(int e) const {
    Decimal r = *this;
    r.exp_ += e;
    r.normalize();
    return r;
}

int Decimal::compare(const Decimal& rhs) const {
    const Decimal d = *this - rhs;
    return d.sign();
}

std::string Decimal::to_string() const {
    if (coeff_ == 0) return "0";
    std::string digits = bigint(boost::multiprecision::abs(coeff_)).str();
    std::string out = coeff_ < 0 ? "-" : "";
    if (exp_ >= 0) {
        out += digits;
        out.append(static_cast<std::size_t>(exp_), '0');
    } else {
        const std::size_t frac = static_cast<std::size_t>(-exp_);
        if (digits.size() <= frac) {
            out += "0.";
            out.append(frac - digits.size(), '0');
            out += digits;
        } else {
            out += digits.substr(0, digits.size() - frac);
            out += '.';
            out += digits.substr(digits.size() - frac);
        }
    }
    return out;
}

double Decimal::to_double() const {
    return std::strtod(to_string().c_str(), nullptr);
}

} // namespace rftforge
