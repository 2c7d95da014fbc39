#pragma once

#include "rftforge/aggregate.hpp"
#include "rftforge/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rftforge {

// Fraction of gold questions answered within 1e-6; questions without a
// prediction count as wrong.
double accuracy(const std::map<std::string, Decimal>& predictions,
                const std::map<std::string, Decimal>& golds);

struct VotingResult {
    std::string question_id;
    std::vector<std::pair<std::string, std::size_t>> votes; // canonical value -> count
    Decimal winner;
    bool correct = false;
};

// Majority vote over the first k answers per question. Unparseable
// answers (nullopt) consume a slot but cast no vote; ties go to the
// answer with the earliest first occurrence. Throws
// Errc::insufficient_samples when a question has fewer than k slots.
double maj_at_k(const std::map<std::string, std::vector<std::optional<Decimal>>>& samples,
                std::size_t k,
                const std::map<std::string, Decimal>& golds,
                std::vector<VotingResult>* results = nullptr);

struct PathStats {
    double correct_per_question = 0.0;
    double distinct_per_question = 0.0;
};

// Means over questions of Correct-path count and of distinct canonical
// keys among Correct paths. Annotations must be extracted.
PathStats path_stats(const std::map<std::string, std::vector<SampledPath>>& verified);

// Fraction of surviving keys whose source set is exactly each subset of
// contributing models; fractions sum to 1.
std::map<std::vector<std::string>, double> venn_partition(const MergedByQuestion& merged);
std::map<std::vector<std::string>, double> venn_partition(const AugmentedDataset& d);

struct ProcessHistogram {
    std::map<std::uint64_t, std::uint64_t> bins; // distinct-key count -> questions
    std::uint64_t at_least_10 = 0;
};

ProcessHistogram process_histogram(const std::vector<std::uint64_t>& counts);

struct ScalingFit {
    double slope = 0.0;     // accuracy units per doubling of data amount
    double intercept = 0.0; // accuracy at data amount 1
    double r2 = 0.0;
};

// Least squares of acc against log2(data_amount). Throws
// Errc::degenerate_input on fewer than two points, non-positive amounts,
// or all amounts equal.
ScalingFit fit_log_linear(std::vector<std::pair<double, double>> points);

} // namespace rftforge
