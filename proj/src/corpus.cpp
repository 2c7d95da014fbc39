#include "rftforge/corpus.hpp"

#include "rftforge/calc.hpp"
#include "rftforge/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_set>

namespace rftforge {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

[[noreturn]] void record_fail(const std::string& source, std::size_t line, const std::string& why) {
    throw Error(Errc::data_error, source + ":" + std::to_string(line) + ": " + why);
}

std::string require_string(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end() || !it->is_string())
        throw Error(Errc::malformed_record, std::string("missing string field \"") + field + "\"");
    return it->get<std::string>();
}

// Deterministic bounded draw; mt19937_64 output is standardized, so the
// same seed reproduces the same slice everywhere.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

} // namespace

Decimal extract_final_answer(std::string_view text) {
    const std::size_t mark = text.rfind("####");
    if (mark == std::string_view::npos)
        throw Error(Errc::answer_missing, "no \"####\" marker");

    std::size_t i = mark + 4;
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (i == j) throw Error(Errc::answer_unparseable, "no token after \"####\"");

    std::string token;
    token.reserve(j - i);
    for (std::size_t k = i; k < j; ++k) {
        const char c = text[k];
        if (c == '$' || c == ',' || c == '%') continue;
        token.push_back(c);
    }
    if (!token.empty() && token.back() == '.') token.pop_back();
    return Decimal::parse(token);
}

Question parse_question_record(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(Errc::malformed_record, e.what());
    }
    if (!j.is_object()) throw Error(Errc::malformed_record, "record is not an object");

    Question q;
    q.id = require_string(j, "id");
    if (q.id.empty()) throw Error(Errc::malformed_record, "empty id");
    q.text = require_string(j, "question");
    q.gold_reasoning = require_string(j, "answer");
    q.gold_answer = extract_final_answer(q.gold_reasoning);
    return q;
}

SampledPath parse_sample_record(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw Error(Errc::malformed_record, e.what());
    }
    if (!j.is_object()) throw Error(Errc::malformed_record, "record is not an object");

    SampledPath p;
    p.question_id = require_string(j, "question_id");
    if (p.question_id.empty()) throw Error(Errc::malformed_record, "empty question_id");
    p.model_id = require_string(j, "model_id");
    if (p.model_id.empty()) throw Error(Errc::malformed_record, "empty model_id");
    p.text = require_string(j, "text");
    if (auto it = j.find("verdict"); it != j.end() && it->is_string())
        p.verdict = verdict_from_string(it->get<std::string>());
    if (auto it = j.find("answer"); it != j.end() && it->is_string())
        p.answer = Decimal::parse(it->get<std::string>());
    return p;
}

std::string question_to_json(const Question& q) {
    ordered_json j;
    j["id"] = q.id;
    j["question"] = q.text;
    j["answer"] = q.gold_reasoning;
    return j.dump();
}

std::string sample_to_json(const SampledPath& p) {
    ordered_json j;
    j["question_id"] = p.question_id;
    j["model_id"] = p.model_id;
    j["text"] = p.text;
    if (p.verdict != Verdict::unverified) j["verdict"] = to_string(p.verdict);
    if (p.answer) j["answer"] = p.answer->to_string();
    return j.dump();
}

std::vector<Question> read_questions(std::istream& in, const std::string& source) {
    std::vector<Question> out;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(parse_question_record(line));
        } catch (const Error& e) {
            record_fail(source, line_no, e.what());
        }
        if (!seen.insert(out.back().id).second)
            record_fail(source, line_no, "duplicate question id \"" + out.back().id + "\"");
    }
    return out;
}

void write_questions(std::ostream& out, std::span<const Question> questions) {
    for (const Question& q : questions) out << question_to_json(q) << '\n';
}

void for_each_sample(std::istream& in, const std::string& source,
                     const std::function<void(SampledPath&&, std::size_t)>& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        SampledPath p;
        try {
            p = parse_sample_record(line);
        } catch (const Error& e) {
            record_fail(source, line_no, e.what());
        }
        fn(std::move(p), line_no);
    }
}

void write_samples(std::ostream& out, std::span<const SampledPath> paths) {
    for (const SampledPath& p : paths) out << sample_to_json(p) << '\n';
}

GroupedSampleReader::GroupedSampleReader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {}

bool GroupedSampleReader::fetch() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (line.empty()) continue;
        try {
            pending_ = parse_sample_record(line);
        } catch (const Error& e) {
            record_fail(source_, line_, e.what());
        }
        has_pending_ = true;
        return true;
    }
    done_ = true;
    has_pending_ = false;
    return false;
}

std::optional<std::string> GroupedSampleReader::peek_question() {
    if (!has_pending_ && (done_ || !fetch())) return std::nullopt;
    return pending_.question_id;
}

std::vector<SampledPath> GroupedSampleReader::next_group() {
    std::vector<SampledPath> group;
    if (done_) return group;
    if (!has_pending_ && !fetch()) return group;

    if (!last_question_.empty() && pending_.question_id <= last_question_)
        record_fail(source_, line_,
                    "question groups must be strictly ascending (\"" + pending_.question_id +
                        "\" after \"" + last_question_ + "\")");
    const std::string qid = pending_.question_id;
    group.push_back(std::move(pending_));
    has_pending_ = false;

    while (fetch()) {
        if (pending_.question_id != qid) break;
        group.push_back(std::move(pending_));
        has_pending_ = false;
    }
    last_question_ = qid;
    return group;
}

std::pair<std::uint64_t, std::uint64_t> parse_fraction(std::string_view text) {
    auto bad = [&]() -> std::pair<std::uint64_t, std::uint64_t> {
        throw Error(Errc::fraction_out_of_range,
                    "\"" + std::string(text) + "\" is not a fraction in (0,1]");
    };
    const std::size_t slash = text.find('/');
    std::uint64_t num = 0, den = 1;
    try {
        if (slash != std::string_view::npos) {
            num = std::stoull(std::string(text.substr(0, slash)));
            den = std::stoull(std::string(text.substr(slash + 1)));
        } else if (text.find('.') != std::string_view::npos) {
            const Decimal d = Decimal::parse(text);
            if (d.sign() <= 0 || d.exponent() < -18) return bad();
            den = 1;
            for (int i = 0; i < -d.exponent(); ++i) den *= 10;
            num = d.coefficient().convert_to<std::uint64_t>();
            if (d.exponent() > 0) for (int i = 0; i < d.exponent(); ++i) num *= 10;
        } else {
            num = std::stoull(std::string(text));
        }
    } catch (const std::exception&) {
        return bad();
    }
    if (num == 0 || den == 0 || num > den) return bad();
    return {num, den};
}

DatasetSlice downsample(std::span<const Question> questions,
                        std::uint64_t fraction_num, std::uint64_t fraction_den,
                        std::uint64_t seed) {
    if (fraction_num == 0 || fraction_den == 0 || fraction_num > fraction_den)
        throw Error(Errc::fraction_out_of_range,
                    std::to_string(fraction_num) + "/" + std::to_string(fraction_den));

    DatasetSlice slice;
    slice.fraction_num = fraction_num;
    slice.fraction_den = fraction_den;
    slice.seed = seed;

    const std::uint64_t n = questions.size();
    if (fraction_num == fraction_den) {
        slice.questions.assign(questions.begin(), questions.end());
        return slice;
    }
    // round half-up of n * num / den
    const std::uint64_t size = (2 * n * fraction_num + fraction_den) / (2 * fraction_den);

    std::vector<std::uint64_t> index(n);
    std::iota(index.begin(), index.end(), 0);
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < size; ++i) {
        const std::uint64_t j = i + draw_below(rng, n - i);
        std::swap(index[i], index[j]);
    }
    index.resize(size);
    std::sort(index.begin(), index.end());

    slice.questions.reserve(size);
    for (std::uint64_t i : index) slice.questions.push_back(questions[i]);
    return slice;
}

} // namespace rftforge
