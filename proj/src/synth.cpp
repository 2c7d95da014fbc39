#include "rftforge/synth.hpp"

#include "rftforge/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <utility>

namespace rftforge {

namespace {

constexpr int variant_universe = 24; // 3 structures x 8 operand orderings

const std::array<const char*, 8> names = {"Mara", "Ben",  "Ana",  "Leo",
                                          "Kim",  "Ravi", "Sofia", "Tom"};
const std::array<const char*, 6> items = {"marbles", "apples",   "cards",
                                          "shells",  "stickers", "coins"};
const std::array<const char*, 4> units = {"points", "seeds", "stars", "tokens"};
const std::array<const char*, 4> openers = {"So", "First,", "To begin,", "Note that"};
const std::array<const char*, 4> linkers = {"Then", "Next,", "After that,", "From there,"};
const std::array<const char*, 4> closers = {"Finally,", "In the end,", "Altogether,",
                                            "At last,"};

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}
    std::uint64_t below(std::uint64_t n) { return engine() % n; }
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
};

struct Story {
    std::string name, item, unit;
    long long a, b, c, d, s1, s2, s3;
};

std::string num(long long v) { return std::to_string(v); }

// One "<expr>=<result>" pair rendered as "expr=<<expr=result>>result".
std::string eq(const std::string& lhs, long long rhs) {
    const std::string r = num(rhs);
    return lhs + "=<<" + lhs + "=" + r + ">>" + r;
}

std::string add_expr(long long x, long long y, bool swapped) {
    return swapped ? num(y) + "+" + num(x) : num(x) + "+" + num(y);
}

// Equation list for one calculation-process variant. `first_rhs_bump`
// perturbs the stated result of the first annotation (wrong calculation).
std::vector<std::pair<std::string, long long>> variant_equations(const Story& s, int variant,
                                                                 long long first_rhs_bump) {
    const int structure = variant / 8;
    const bool swap_add = variant & 1;
    const bool swap_mul = variant & 2;
    const bool swap_tail = variant & 4;

    const std::string sum = add_expr(s.a, s.b, swap_add);
    const std::string parenthesized = "(" + sum + ")";
    const std::string product_of = [&](const std::string& grouped) {
        return swap_mul ? num(s.c) + "*" + grouped : grouped + "*" + num(s.c);
    }(structure == 0 ? num(s.s1) : parenthesized);

    std::vector<std::pair<std::string, long long>> eqs;
    switch (structure) {
        case 0:
            eqs.emplace_back(sum, s.s1);
            eqs.emplace_back(product_of, s.s2);
            eqs.emplace_back(add_expr(s.s2, s.d, swap_tail), s.s3);
            break;
        case 1:
            eqs.emplace_back(swap_tail ? num(s.d) + "+" + product_of : product_of + "+" + num(s.d),
                             s.s3);
            break;
        default:
            eqs.emplace_back(product_of, s.s2);
            eqs.emplace_back(add_expr(s.s2, s.d, swap_tail), s.s3);
            break;
    }
    eqs.front().second += first_rhs_bump;
    return eqs;
}

std::string render_reasoning(const Story& s, int variant, long long first_rhs_bump, Rng& rng) {
    const auto eqs = variant_equations(s, variant, first_rhs_bump);
    std::string text;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        if (i == 0) text += openers[rng.below(openers.size())];
        else if (i + 1 == eqs.size()) text += closers[rng.below(closers.size())];
        else text += linkers[rng.below(linkers.size())];
        text += " ";
        text += s.name;
        text += i == 0 ? " gets " : " now has ";
        text += eq(eqs[i].first, eqs[i].second);
        text += " ";
        text += i == 0 && eqs.size() > 1 ? s.item : s.unit;
        text += ". ";
    }
    return text;
}

} // namespace

SynthCorpus gen_corpus(const SynthConfig& cfg) {
    if (cfg.p_correct < 0.0 || cfg.p_correct > 1.0)
        throw Error(Errc::invalid_argument, "p_correct must be in [0,1]");
    if (!(cfg.diversity > 0.0))
        throw Error(Errc::invalid_argument, "diversity must be positive");
    if (cfg.model_ids.empty())
        throw Error(Errc::invalid_argument, "at least one model id required");

    Rng rng(cfg.seed);
    SynthCorpus corpus;
    corpus.questions.reserve(cfg.n_questions);
    for (const std::string& m : cfg.model_ids) corpus.samples_by_model[m] = {};

    for (std::uint64_t qi = 0; qi < cfg.n_questions; ++qi) {
        Story s;
        s.name = names[rng.below(names.size())];
        s.item = items[rng.below(items.size())];
        s.unit = units[rng.below(units.size())];
        s.a = rng.range(5, 60);
        do s.b = rng.range(5, 60); while (s.b == s.a);
        s.c = rng.range(2, 9);
        s.d = rng.range(2, 19);
        s.s1 = s.a + s.b;
        s.s2 = s.s1 * s.c;
        s.s3 = s.s2 + s.d;

        char id[16];
        std::snprintf(id, sizeof id, "q%06llu", static_cast<unsigned long long>(qi + 1));

        Question q;
        q.id = id;
        q.text = s.name + " collects " + num(s.a) + " red " + s.item + " and " + num(s.b) +
                 " blue " + s.item + ". Each one comes with " + num(s.c) + " " + s.unit +
                 ", and " + s.name + " finds " + num(s.d) + " more " + s.unit +
                 ". How many " + s.unit + " does " + s.name + " have?";
        q.gold_reasoning = render_reasoning(s, 0, 0, rng) + "#### " + num(s.s3);
        q.gold_answer = Decimal::from_int(s.s3);
        corpus.questions.push_back(std::move(q));

        // Per-model variant window: size follows `diversity` (stochastic
        // rounding), overlapping windows across models.
        int window = static_cast<int>(cfg.diversity);
        const double frac = cfg.diversity - window;
        if (rng.unit() < frac) ++window;
        window = std::clamp(window, 1, variant_universe);
        const int offset = std::max(1, window / 2);

        for (std::size_t mi = 0; mi < cfg.model_ids.size(); ++mi) {
            auto& out = corpus.samples_by_model[cfg.model_ids[mi]];
            for (std::uint64_t j = 0; j < cfg.k; ++j) {
                SampledPath p;
                p.question_id = id;
                p.model_id = cfg.model_ids[mi];

                if (rng.unit() < cfg.p_correct) {
                    const int variant =
                        static_cast<int>((mi * offset + rng.below(window)) % variant_universe);
                    p.text = render_reasoning(s, variant, 0, rng) + "#### " + num(s.s3);
                } else {
                    switch (rng.below(3)) {
                        case 0: { // wrong final answer, calculations intact
                            const long long wrong = s.s3 + rng.range(1, 9);
                            p.text = render_reasoning(s, 0, 0, rng) + "#### " + num(wrong);
                            break;
                        }
                        case 1: // wrong calculation, correct final answer
                            p.text = render_reasoning(s, 0, 1, rng) + "#### " + num(s.s3);
                            break;
                        default: { // unparseable: broken annotation or missing marker
                            switch (rng.below(3)) {
                                case 0:
                                    p.text = s.name + " gets " + num(s.a) + "+" + num(s.b) +
                                             "=<<" + num(s.a) + "+" + num(s.b) + "=>>" +
                                             num(s.s1) + " " + s.item + ". #### " + num(s.s3);
                                    break;
                                case 1:
                                    p.text = s.name + " gets <<" + num(s.a) + "+" + num(s.b) +
                                             "=" + num(s.s1) + " " + s.item + " and stops early.";
                                    break;
                                default:
                                    p.text = render_reasoning(s, 0, 0, rng); // no "####"
                                    break;
                            }
                            break;
                        }
                    }
                }
                out.push_back(std::move(p));
            }
        }
    }
    return corpus;
}

} // namespace rftforge
