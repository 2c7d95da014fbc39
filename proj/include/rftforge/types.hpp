#pragma once

#include "rftforge/decimal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rftforge {

enum class Verdict {
    unverified,
    correct,
    wrong_answer,
    wrong_calculation,
    unparseable,
};

const char* to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

// One <<lhs=rhs>> calculator annotation. `begin`/`end` are byte offsets of
// the whole span in the path text, delimiters included. `well_formed` is
// false when the span is unclosed or the inner text does not contain
// exactly one top-level "=".
struct EquationAnnotation {
    std::string raw;
    std::string lhs_src;
    std::string rhs_src;
    std::size_t begin = 0;
    std::size_t end = 0;
    bool well_formed = false;
};

struct Question {
    std::string id;
    std::string text;
    std::string gold_reasoning;
    Decimal gold_answer;
};

struct SampledPath {
    std::string question_id;
    std::string model_id;
    std::string text;
    std::optional<Decimal> answer;
    std::vector<EquationAnnotation> annotations;
    Verdict verdict = Verdict::unverified;
};

struct DatasetSlice {
    std::vector<Question> questions;
    std::uint64_t fraction_num = 1;
    std::uint64_t fraction_den = 1;
    std::uint64_t seed = 0;
};

} // namespace rftforge
