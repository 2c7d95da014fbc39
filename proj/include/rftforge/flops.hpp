#pragma once

#include <cstdint>
#include <optional>

namespace rftforge {

struct ModelShape {
    std::uint64_t n_layer = 0;
    std::uint64_t d_model = 0;
    // Non-embedding parameter count; derived as 12 * n_layer * d_model^2
    // when absent.
    std::optional<double> n_nonembed;

    double n() const;
};

struct WorkloadSpec {
    std::uint64_t n_q = 0;       // question tokens
    std::uint64_t n_r = 0;       // response tokens
    std::uint64_t n_samples = 0; // sequences
    std::uint64_t epochs = 1;

    std::uint64_t n_ctx() const { return n_q + n_r; }
};

// 6 * N * n_ctx * (n_samples * epochs)
double train_flops(const ModelShape& m, const WorkloadSpec& w);

// 2N + 2 * n_layer * n_ctx * d_model
double forward_flops_per_token(const ModelShape& m, std::uint64_t n_ctx);

// 4 * n_layer * d_model^2
double kv_cache_flops(const ModelShape& m);

// forward - kv_cache (exact form; equals 20 * n_layer * d_model^2 plus
// the context term when N is derived)
double decode_flops_per_token(const ModelShape& m, std::uint64_t n_ctx);

// 1.66N + 2 * n_layer * n_ctx * d_model
double decode_flops_per_token_approx(const ModelShape& m, std::uint64_t n_ctx);

// n_samples * [ sum_{j=1..n_q} forward(j) + sum_{i=n_q..n_q+n_r-1} decode(i) ].
// Prefill is costed per position with growing context; epochs are ignored.
double inference_flops(const ModelShape& m, const WorkloadSpec& w);

// Variant costing the whole prompt at full context: n_q * forward(n_q).
double inference_flops_flat_prefill(const ModelShape& m, const WorkloadSpec& w);

// flops / (throughput * utilization * 3600)
double gpu_hours(double flops, double throughput_flops_per_s, double utilization);

} // namespace rftforge
