#include "rftforge/synth.hpp"

#include "rftforge/calc.hpp"
#include "rftforge/corpus.hpp"
#include "rftforge/errors.hpp"
#include "rftforge/select.hpp"

#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

using namespace rftforge;

namespace {

SynthConfig small_config() {
    SynthConfig cfg;
    cfg.n_questions = 30;
    cfg.k = 20;
    cfg.p_correct = 0.7;
    cfg.diversity = 3.0;
    cfg.seed = 42;
    return cfg;
}

std::map<std::string, Decimal> golds_of(const SynthCorpus& corpus) {
    std::map<std::string, Decimal> golds;
    for (const Question& q : corpus.questions) golds[q.id] = q.gold_answer;
    return golds;
}

} // namespace

TEST_CASE("gold paths always verify Correct") {
    const auto corpus = gen_corpus(small_config());
    REQUIRE(corpus.questions.size() == 30);
    for (const Question& q : corpus.questions) {
        SampledPath gold;
        gold.question_id = q.id;
        gold.model_id = "gold";
        gold.text = q.gold_reasoning;
        gold.annotations = extract_annotations(gold.text);
        CHECK(verify_path(gold, q.gold_answer) == Verdict::correct);
        CHECK(extract_final_answer(q.gold_reasoning) == q.gold_answer);
    }
}

TEST_CASE("same seed regenerates byte-identical output") {
    const auto a = gen_corpus(small_config());
    const auto b = gen_corpus(small_config());
    std::stringstream sa, sb;
    write_questions(sa, a.questions);
    write_questions(sb, b.questions);
    write_samples(sa, a.samples_by_model.at("synth"));
    write_samples(sb, b.samples_by_model.at("synth"));
    CHECK(sa.str() == sb.str());

    auto cfg = small_config();
    cfg.seed = 43;
    const auto c = gen_corpus(cfg);
    std::stringstream sc;
    write_questions(sc, c.questions);
    CHECK(sc.str() != sa.str());
}

TEST_CASE("degenerate knobs") {
    SUBCASE("p_correct=1 and vanishing diversity: all Correct, one key per question") {
        SynthConfig cfg = small_config();
        cfg.p_correct = 1.0;
        cfg.diversity = 1e-9;
        const auto corpus = gen_corpus(cfg);
        const auto golds = golds_of(corpus);
        for (const Question& q : corpus.questions) {
            std::set<std::string> keys;
            for (SampledPath p : corpus.samples_by_model.at("synth")) {
                if (p.question_id != q.id) continue;
                p.annotations = extract_annotations(p.text);
                CHECK(verify_path(p, golds.at(q.id)) == Verdict::correct);
                keys.insert(canonical_key(p));
            }
            CHECK(keys.size() == 1);
        }
    }

    SUBCASE("p_correct=0: no path survives the filter") {
        SynthConfig cfg = small_config();
        cfg.p_correct = 0.0;
        const auto corpus = gen_corpus(cfg);
        const auto golds = golds_of(corpus);
        for (SampledPath p : corpus.samples_by_model.at("synth")) {
            p.annotations = extract_annotations(p.text);
            CHECK(verify_path(p, golds.at(p.question_id)) != Verdict::correct);
        }
    }

    SUBCASE("bad knobs rejected") {
        SynthConfig cfg = small_config();
        cfg.p_correct = 1.5;
        CHECK_THROWS_AS((void)gen_corpus(cfg), Error);
        cfg = small_config();
        cfg.diversity = 0.0;
        CHECK_THROWS_AS((void)gen_corpus(cfg), Error);
        cfg = small_config();
        cfg.model_ids.clear();
        CHECK_THROWS_AS((void)gen_corpus(cfg), Error);
    }
}

TEST_CASE("every sample category appears and classifies as planted") {
    SynthConfig cfg = small_config();
    cfg.p_correct = 0.5;
    cfg.n_questions = 50;
    const auto corpus = gen_corpus(cfg);
    const auto golds = golds_of(corpus);

    std::map<Verdict, int> histogram;
    for (SampledPath p : corpus.samples_by_model.at("synth")) {
        p.annotations = extract_annotations(p.text);
        ++histogram[verify_path(p, golds.at(p.question_id))];
    }
    CHECK(histogram[Verdict::correct] > 0);
    CHECK(histogram[Verdict::wrong_answer] > 0);
    CHECK(histogram[Verdict::wrong_calculation] > 0);
    CHECK(histogram[Verdict::unparseable] > 0);
    CHECK(histogram[Verdict::unverified] == 0);
}

TEST_CASE("distinct processes per question grow sublinearly in k") {
    SynthConfig cfg;
    cfg.n_questions = 200;
    cfg.k = 50;
    cfg.p_correct = 0.9;
    cfg.diversity = 4.0;
    cfg.seed = 7;
    const auto corpus = gen_corpus(cfg);
    const auto golds = golds_of(corpus);

    auto verified = corpus.samples_by_model.at("synth");
    for (SampledPath& p : verified) {
        p.annotations = extract_annotations(p.text);
        (void)verify_path(p, golds.at(p.question_id));
    }

    // distinct keys among the first k correct-verdict samples per question
    auto distinct_at = [&](std::size_t k) {
        std::map<std::string, std::set<std::string>> keys;
        std::map<std::string, std::size_t> taken;
        for (const SampledPath& p : verified) {
            if (taken[p.question_id]++ >= k) continue;
            if (p.verdict != Verdict::correct) continue;
            keys[p.question_id].insert(canonical_key(p));
        }
        std::size_t total = 0;
        for (const auto& [qid, ks] : keys) total += ks.size();
        return static_cast<double>(total) / static_cast<double>(cfg.n_questions);
    };

    double prev = distinct_at(1);
    for (std::size_t k : {5, 10, 20, 50}) {
        const double cur = distinct_at(k);
        CHECK(cur >= prev); // nondecreasing in sampling count
        prev = cur;
    }
}

TEST_CASE("multiple models contribute overlapping but distinct variant pools") {
    SynthConfig cfg;
    cfg.n_questions = 40;
    cfg.k = 60;
    cfg.p_correct = 1.0;
    cfg.diversity = 4.0;
    cfg.seed = 3;
    cfg.model_ids = {"a", "b", "c", "d"};
    const auto corpus = gen_corpus(cfg);

    std::map<std::string, std::map<std::string, std::set<std::string>>> keys_by_model;
    for (const auto& [model, samples] : corpus.samples_by_model)
        for (SampledPath p : samples) {
            p.annotations = extract_annotations(p.text);
            keys_by_model[model][p.question_id].insert(canonical_key(p));
        }

    std::size_t union_total = 0, best_single = 0;
    for (const Question& q : corpus.questions) {
        std::set<std::string> unioned;
        for (const auto& [model, by_q] : keys_by_model) {
            const auto& ks = by_q.at(q.id);
            best_single = std::max(best_single, ks.size());
            unioned.insert(ks.begin(), ks.end());
        }
        union_total += unioned.size();
    }
    // pooling across models reaches processes no single model covers
    CHECK(union_total > best_single * corpus.questions.size() / 2);
    CHECK(union_total > 4 * corpus.questions.size()); // more than one window's worth
}
