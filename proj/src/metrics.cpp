#include "rftforge/metrics.hpp"

#include "rftforge/errors.hpp"
#include "rftforge/select.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace rftforge {

namespace {

const Decimal& answer_tolerance() {
    static const Decimal tol(1, -6);
    return tol;
}

bool matches(const Decimal& a, const Decimal& b) {
    return (a - b).abs() <= answer_tolerance();
}

} // namespace

double accuracy(const std::map<std::string, Decimal>& predictions,
                const std::map<std::string, Decimal>& golds) {
    if (golds.empty()) return 0.0;
    for (const auto& [qid, pred] : predictions)
        if (!golds.count(qid))
            throw Error(Errc::unknown_question, "prediction for unknown question \"" + qid + "\"");

    std::size_t hits = 0;
    for (const auto& [qid, gold] : golds) {
        auto it = predictions.find(qid);
        if (it != predictions.end() && matches(it->second, gold)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(golds.size());
}

double maj_at_k(const std::map<std::string, std::vector<std::optional<Decimal>>>& samples,
                std::size_t k,
                const std::map<std::string, Decimal>& golds,
                std::vector<VotingResult>* results) {
    if (k == 0) throw Error(Errc::invalid_argument, "k must be positive");
    if (golds.empty()) return 0.0;
    for (const auto& [qid, answers] : samples) {
        if (!golds.count(qid))
            throw Error(Errc::unknown_question, "samples for unknown question \"" + qid + "\"");
        if (answers.size() < k)
            throw Error(Errc::insufficient_samples,
                        "question \"" + qid + "\" has " + std::to_string(answers.size()) +
                            " samples, need " + std::to_string(k));
    }

    std::size_t hits = 0;
    for (const auto& [qid, gold] : golds) {
        auto it = samples.find(qid);
        if (it == samples.end()) continue;

        VotingResult vr;
        vr.question_id = qid;
        std::unordered_map<std::string, std::size_t> index_of;
        std::vector<Decimal> values;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& slot = it->second[i];
            if (!slot) continue;
            const std::string canon = slot->to_string();
            auto [pos, inserted] = index_of.try_emplace(canon, vr.votes.size());
            if (inserted) {
                vr.votes.emplace_back(canon, 1);
                values.push_back(*slot);
            } else {
                ++vr.votes[pos->second].second;
            }
        }
        if (vr.votes.empty()) {
            if (results) results->push_back(std::move(vr));
            continue;
        }
        // Max count; first occurrence wins ties by scan order.
        std::size_t best = 0;
        for (std::size_t i = 1; i < vr.votes.size(); ++i)
            if (vr.votes[i].second > vr.votes[best].second) best = i;
        vr.winner = values[best];
        vr.correct = matches(vr.winner, gold);
        if (vr.correct) ++hits;
        if (results) results->push_back(std::move(vr));
    }
    return static_cast<double>(hits) / static_cast<double>(golds.size());
}

PathStats path_stats(const std::map<std::string, std::vector<SampledPath>>& verified) {
    PathStats stats;
    if (verified.empty()) return stats;
    std::size_t total_correct = 0;
    std::size_t total_distinct = 0;
    for (const auto& [qid, paths] : verified) {
        std::unordered_set<std::string> keys;
        for (const SampledPath& p : paths) {
            if (p.verdict != Verdict::correct) continue;
            ++total_correct;
            keys.insert(canonical_key(p));
        }
        total_distinct += keys.size();
    }
    const double n = static_cast<double>(verified.size());
    stats.correct_per_question = static_cast<double>(total_correct) / n;
    stats.distinct_per_question = static_cast<double>(total_distinct) / n;
    return stats;
}

std::map<std::vector<std::string>, double> venn_partition(const MergedByQuestion& merged) {
    std::map<std::vector<std::string>, std::uint64_t> counts;
    std::uint64_t total = 0;
    for (const auto& [qid, paths] : merged) {
        for (const ProvenancedPath& pp : paths) {
            ++counts[pp.sources];
            ++total;
        }
    }
    std::map<std::vector<std::string>, double> fractions;
    for (const auto& [subset, count] : counts)
        fractions[subset] = static_cast<double>(count) / static_cast<double>(total);
    return fractions;
}

std::map<std::vector<std::string>, double> venn_partition(const AugmentedDataset& d) {
    return venn_partition(d.augmented);
}

ProcessHistogram process_histogram(const std::vector<std::uint64_t>& counts) {
    ProcessHistogram h;
    for (std::uint64_t c : counts) {
        ++h.bins[c];
        if (c >= 10) ++h.at_least_10;
    }
    return h;
}

ScalingFit fit_log_linear(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
        throw Error(Errc::degenerate_input, "need at least two points");
    for (const auto& [x, y] : points)
        if (!(x > 0.0))
            throw Error(Errc::degenerate_input, "data amounts must be positive");

    // Order-invariant accumulation.
    std::sort(points.begin(), points.end());
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        const double lx = std::log2(x);
        sx += lx;
        sy += y;
        sxx += lx * lx;
        sxy += lx * y;
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * std::max(1.0, n * sxx))
        throw Error(Errc::degenerate_input, "data amounts are all equal");

    ScalingFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double mean_y = sy / n;
    for (const auto& [x, y] : points) {
        const double pred = fit.slope * std::log2(x) + fit.intercept;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean_y) * (y - mean_y);
    }
    fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

} // namespace rftforge
