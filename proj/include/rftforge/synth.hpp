#pragma once

#include "rftforge/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rftforge {

struct SynthConfig {
    std::uint64_t n_questions = 100;
    std::uint64_t k = 10;          // samples per question per model
    double p_correct = 0.8;        // probability a sample is a correct path
    double diversity = 3.0;        // expected distinct calculation processes per model
    std::uint64_t seed = 0;
    std::vector<std::string> model_ids = {"synth"};
};

struct SynthCorpus {
    std::vector<Question> questions;
    // Per model, grouped by question in question order.
    std::map<std::string, std::vector<SampledPath>> samples_by_model;
};

// Deterministic generator of 3-step integer word problems with gold
// calculator annotations plus k sampled paths per question per model.
// Correct samples draw a calculation-process variant (operand or equation
// reorderings, merged-step forms) from a per-model window whose size
// follows `diversity`, so dedup sees both distinct keys and same-key
// duplicates; the remainder split across wrong-answer, wrong-calculation
// and unparseable paths. Byte-identical output for a fixed config.
SynthCorpus gen_corpus(const SynthConfig& cfg);

} // namespace rftforge
