#include "rftforge/aggregate.hpp"

#include "rftforge/calc.hpp"
#include "rftforge/errors.hpp"
#include "rftforge/parallel.hpp"
#include "rftforge/select.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace rftforge {

namespace {

using ordered_json = nlohmann::ordered_json;
using json = nlohmann::json;

} // namespace

std::vector<ProvenancedPath> merge_question(
    const std::vector<std::pair<std::string, std::vector<SampledPath>>>& pools) {
    std::vector<SampledPath> combined;
    // model -> set of keys that model's pool contributed for this question
    std::vector<std::pair<std::string, std::unordered_set<std::string>>> membership;
    for (const auto& [model_id, paths] : pools) {
        auto& keys = membership.emplace_back(model_id, std::unordered_set<std::string>{}).second;
        for (const SampledPath& p : paths) {
            keys.insert(canonical_key(p));
            combined.push_back(p);
        }
    }

    std::vector<ProvenancedPath> out;
    for (SampledPath& survivor : select_diverse(std::move(combined))) {
        const std::string key = canonical_key(survivor);
        ProvenancedPath pp;
        pp.path = std::move(survivor);
        for (const auto& [model, keys] : membership)
            if (keys.count(key)) pp.sources.push_back(model);
        std::sort(pp.sources.begin(), pp.sources.end());
        pp.sources.erase(std::unique(pp.sources.begin(), pp.sources.end()), pp.sources.end());
        out.push_back(std::move(pp));
    }
    return out;
}

MergedByQuestion merge(const std::vector<Pool>& pools,
                       const std::set<std::string>& base_ids,
                       unsigned threads) {
    std::vector<std::string> question_order;
    std::unordered_set<std::string> seen;
    for (const Pool& pool : pools) {
        for (const auto& [qid, paths] : pool.by_question) {
            if (!base_ids.count(qid))
                throw Error(Errc::unknown_question,
                            "\"" + qid + "\" (model " + pool.model_id + ") not in base set");
            if (seen.insert(qid).second) question_order.push_back(qid);
        }
    }

    std::vector<std::vector<ProvenancedPath>> results(question_order.size());
    parallel_for(question_order.size(), threads, [&](std::size_t i) {
        std::vector<std::pair<std::string, std::vector<SampledPath>>> per_question;
        for (const Pool& pool : pools) {
            auto it = pool.by_question.find(question_order[i]);
            if (it != pool.by_question.end()) per_question.emplace_back(pool.model_id, it->second);
        }
        results[i] = merge_question(per_question);
    });

    MergedByQuestion merged;
    for (std::size_t i = 0; i < question_order.size(); ++i)
        merged.emplace(std::move(question_order[i]), std::move(results[i]));
    return merged;
}

std::size_t AugmentedDataset::total_size() const {
    std::size_t n = original.size();
    for (const auto& [qid, paths] : augmented) n += paths.size();
    return n;
}

AugmentedDataset build_rft_dataset(std::vector<Question> base, MergedByQuestion merged) {
    std::unordered_set<std::string> base_ids;
    for (const Question& q : base) base_ids.insert(q.id);
    for (const auto& [qid, paths] : merged) {
        if (!base_ids.count(qid))
            throw Error(Errc::unknown_question, "\"" + qid + "\" not in base set");
        std::unordered_set<std::string> keys;
        for (const ProvenancedPath& pp : paths)
            if (!keys.insert(canonical_key(pp.path)).second)
                throw Error(Errc::data_error,
                            "duplicate canonical key within question \"" + qid + "\"");
    }

    AugmentedDataset d;
    d.original = std::move(base);
    d.augmented = std::move(merged);
    std::sort(d.original.begin(), d.original.end(),
              [](const Question& a, const Question& b) { return a.id < b.id; });
    return d;
}

void write_rft_dataset(std::ostream& out, const AugmentedDataset& d) {
    for (const Question& q : d.original) {
        ordered_json j;
        j["id"] = q.id;
        j["question"] = q.text;
        j["answer"] = q.gold_reasoning;
        j["source"] = "gold";
        j["sources"] = json::array();
        out << j.dump() << '\n';

        auto it = d.augmented.find(q.id);
        if (it == d.augmented.end()) continue;
        for (const ProvenancedPath& pp : it->second) {
            ordered_json pj;
            pj["id"] = q.id;
            pj["question"] = q.text;
            pj["answer"] = pp.path.text;
            pj["source"] = pp.path.model_id;
            pj["sources"] = pp.sources;
            out << pj.dump() << '\n';
        }
    }
}

void write_merged(std::ostream& out, const MergedByQuestion& merged) {
    for (const auto& [qid, paths] : merged) {
        for (const ProvenancedPath& pp : paths) {
            ordered_json j;
            j["question_id"] = qid;
            j["model_id"] = pp.path.model_id;
            j["text"] = pp.path.text;
            j["sources"] = pp.sources;
            out << j.dump() << '\n';
        }
    }
}

MergedByQuestion read_merged(std::istream& in, const std::string& source) {
    MergedByQuestion merged;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(Errc::data_error,
                        source + ":" + std::to_string(line_no) + ": " + e.what());
        }
        ProvenancedPath pp;
        try {
            pp.path.question_id = j.at("question_id").get<std::string>();
            pp.path.model_id = j.at("model_id").get<std::string>();
            pp.path.text = j.at("text").get<std::string>();
            pp.sources = j.at("sources").get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            throw Error(Errc::data_error,
                        source + ":" + std::to_string(line_no) + ": " + e.what());
        }
        pp.path.verdict = Verdict::correct;
        pp.path.annotations = extract_annotations(pp.path.text);
        merged[pp.path.question_id].push_back(std::move(pp));
    }
    return merged;
}

} // namespace rftforge
