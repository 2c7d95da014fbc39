#pragma once

#include "rftforge/types.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rftforge {

// Value of the last "####" marker. Strips "$", ",", "%", surrounding
// whitespace and one trailing period from the token that follows.
// Throws Errc::answer_missing / Errc::answer_unparseable.
Decimal extract_final_answer(std::string_view text);

// One JSONL record {"id","question","answer"}; the answer field is the
// gold reasoning text whose tail holds "#### <number>".
Question parse_question_record(std::string_view line);

// One JSONL record {"question_id","model_id","text"} plus optional
// "verdict" and "answer" fields written by the verify stage.
SampledPath parse_sample_record(std::string_view line);

std::string question_to_json(const Question& q);
std::string sample_to_json(const SampledPath& p);

// Whole-file readers. Duplicate question ids raise Errc::data_error with
// "<source>:<line>" context, as do malformed records.
std::vector<Question> read_questions(std::istream& in, const std::string& source);
void write_questions(std::ostream& out, std::span<const Question> questions);

// Streams records one line at a time; fn(path, line_number).
void for_each_sample(std::istream& in, const std::string& source,
                     const std::function<void(SampledPath&&, std::size_t)>& fn);

void write_samples(std::ostream& out, std::span<const SampledPath> paths);

// Iterates maximal runs of consecutive records sharing a question_id.
// Sample files are required to be grouped by question with strictly
// ascending ids so multi-file stages can align streams; violations raise
// Errc::data_error naming the line.
class GroupedSampleReader {
public:
    GroupedSampleReader(std::istream& in, std::string source);

    // Empty result means end of stream.
    std::vector<SampledPath> next_group();
    // Question id of the next group without consuming it.
    std::optional<std::string> peek_question();

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
    SampledPath pending_;
    bool has_pending_ = false;
    bool done_ = false;
    std::string last_question_;

    bool fetch();
};

// "a/b", integer, or decimal string -> fraction. Throws
// Errc::fraction_out_of_range when not in (0,1].
std::pair<std::uint64_t, std::uint64_t> parse_fraction(std::string_view text);

// Uniform sample without replacement of round(fraction * n) questions
// (round half-up), deterministic for a fixed seed, input order preserved.
DatasetSlice downsample(std::span<const Question> questions,
                        std::uint64_t fraction_num, std::uint64_t fraction_den,
                        std::uint64_t seed);

} // namespace rftforge
