#pragma once

#include "rftforge/types.hpp"

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace rftforge {

// A surviving path plus every model whose pool contained its canonical
// key (not just the model that produced the surviving representative).
struct ProvenancedPath {
    SampledPath path;
    std::vector<std::string> sources; // sorted, unique, non-empty
};

// One model's rejection-sampled pool, already filtered to Correct
// verdicts and deduplicated per model.
struct Pool {
    std::string model_id;
    std::map<std::string, std::vector<SampledPath>> by_question;
};

using MergedByQuestion = std::map<std::string, std::vector<ProvenancedPath>>;

// One question's merge: concatenate the per-model path lists in caller
// order (within-pool order preserved), rerun the diverse selection on the
// concatenation, attach key-membership provenance.
std::vector<ProvenancedPath> merge_question(
    const std::vector<std::pair<std::string, std::vector<SampledPath>>>& pools);

// merge_question across every question seen in any pool. Questions must
// exist in base_ids (Errc::unknown_question). Deterministic for any
// thread count.
MergedByQuestion merge(const std::vector<Pool>& pools,
                       const std::set<std::string>& base_ids,
                       unsigned threads = 1);

struct AugmentedDataset {
    std::vector<Question> original;
    MergedByQuestion augmented;

    std::size_t total_size() const;
};

// D' = gold records plus one training record per surviving path.
// Validates that every augmented question exists in the base set and
// that per-question canonical keys are pairwise distinct.
AugmentedDataset build_rft_dataset(std::vector<Question> base, MergedByQuestion merged);

// JSONL, question_id ascending, gold record first, then paths in
// selection order. Fields: id, question, answer, source, sources.
void write_rft_dataset(std::ostream& out, const AugmentedDataset& d);

// Intermediate merged-pool JSONL: question_id, model_id, text, sources.
void write_merged(std::ostream& out, const MergedByQuestion& merged);
MergedByQuestion read_merged(std::istream& in, const std::string& source);

} // namespace rftforge
