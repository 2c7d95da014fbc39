#include "rftforge/select.hpp"

#include "rftforge/calc.hpp"
#include "rftforge/errors.hpp"

#include "doctest.h"
#include "golden_paths.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace rftforge;

namespace {

SampledPath path_with(const std::string& text, const std::string& qid = "q1") {
    SampledPath p;
    p.question_id = qid;
    p.model_id = "m";
    p.text = text;
    p.annotations = extract_annotations(text);
    p.verdict = Verdict::correct;
    return p;
}

// Random path whose canonical key is pinned by a single annotation.
SampledPath keyed_path(int key, std::mt19937_64& rng, const std::string& qid = "q1") {
    auto word = [&](int n) {
        std::string w;
        for (int i = 0; i < n; ++i) w += static_cast<char>('a' + rng() % 26);
        return w;
    };
    const std::string k = std::to_string(key);
    return path_with(word(static_cast<int>(rng() % 20)) + " <<" + k + "+0=" + k + ">> " +
                         word(static_cast<int>(rng() % 20)),
                     qid);
}

} // namespace

TEST_CASE("canonical keys strip whitespace and keep order") {
    SampledPath p = path_with(golden::rate_paths[0]);
    const std::string sep(1, key_separator);
    CHECK(canonical_key(p) == "12/60=0.2" + sep + "0.2*50=10");

    // Whitespace-only edits do not change the key.
    SampledPath spaced = path_with("x << 12 / 60 = 0.2 >>0.2 y << 0.2 * 50 = 10 >>10");
    CHECK(canonical_key(spaced) == canonical_key(p));

    // Operand order distinguishes processes.
    SampledPath p2 = path_with(golden::rate_paths[1]);
    CHECK(canonical_key(p) != canonical_key(p2));

    SampledPath none = path_with("no annotations #### 3");
    CHECK(canonical_key(none).empty());
}

TEST_CASE("levenshtein basics") {
    CHECK(levenshtein("abc", "abc") == 0);
    CHECK(levenshtein("", "abc") == 3);
    CHECK(levenshtein("abc", "") == 3);
    CHECK(levenshtein("kitten", "sitting") == 3);
    CHECK(levenshtein("flaw", "lawn") == 2);
    // Unicode scalars count as single symbols.
    CHECK(levenshtein("café", "cafe") == 1);
}

TEST_CASE("levenshtein matches the DP oracle, is symmetric, triangle holds") {
    std::mt19937_64 rng(99);
    auto random_string = [&]() {
        std::string s;
        const std::size_t n = rng() % 24;
        for (std::size_t i = 0; i < n; ++i) s += static_cast<char>('a' + rng() % 4);
        return s;
    };
    for (int i = 0; i < 10000; ++i) {
        const std::string a = random_string(), b = random_string(), c = random_string();
        const std::size_t ab = levenshtein(a, b);
        CHECK(ab == oracle::levenshtein_matrix(a, b));
        CHECK(ab == levenshtein(b, a));
        CHECK(ab <= levenshtein(a, c) + levenshtein(c, b));
    }
}

TEST_CASE("select_diverse keeps the most dissimilar representative") {
    // Challenger with a larger distance sum replaces the incumbent.
    std::vector<SampledPath> paths;
    paths.push_back(path_with("aaaa <<1+1=2>>"));
    paths.push_back(path_with("aaab <<2+2=4>>"));
    paths.push_back(path_with("bbbb <<1+1=2>>"));
    const auto picked = select_diverse(paths);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0].text == "bbbb <<1+1=2>>"); // challenger won slot 0
    CHECK(picked[1].text == "aaab <<2+2=4>>");

    // All keys distinct: output equals input.
    std::vector<SampledPath> distinct;
    for (int i = 0; i < 5; ++i)
        distinct.push_back(path_with("t" + std::to_string(i) + " <<" + std::to_string(i) +
                                     "+0=" + std::to_string(i) + ">>"));
    const auto all = select_diverse(distinct);
    REQUIRE(all.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(all[i].text == distinct[i].text);

    // Single selected key, challenger arrives: empty sums tie, incumbent stays.
    std::vector<SampledPath> pair;
    pair.push_back(path_with("first <<1+1=2>>"));
    pair.push_back(path_with("second <<1+1=2>>"));
    const auto kept = select_diverse(pair);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].text == "first <<1+1=2>>");
}

TEST_CASE("select_diverse rejects mixed questions") {
    std::vector<SampledPath> paths;
    paths.push_back(path_with("a <<1+1=2>>", "q1"));
    paths.push_back(path_with("b <<1+1=2>>", "q2"));
    CHECK_THROWS_AS((void)select_diverse(paths), Error);
}

TEST_CASE("select_diverse matches greedy replay on random pools") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const int n_paths = 1 + static_cast<int>(rng() % 30);
        const int n_keys = 1 + static_cast<int>(rng() % 6);
        std::vector<SampledPath> pool;
        for (int i = 0; i < n_paths; ++i)
            pool.push_back(keyed_path(static_cast<int>(rng() % n_keys), rng));

        const auto got = select_diverse(pool);
        const auto expected = oracle::replay_selection(pool);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].text == expected[i].text);

        // one path per key, keys preserved
        std::set<std::string> in_keys, out_keys;
        for (const auto& p : pool) in_keys.insert(canonical_key(p));
        for (const auto& p : got) out_keys.insert(canonical_key(p));
        CHECK(in_keys == out_keys);

        // idempotent
        const auto again = select_diverse(got);
        REQUIRE(again.size() == got.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(again[i].text == got[i].text);
    }
}
