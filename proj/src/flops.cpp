#include "rftforge/flops.hpp"

#include "rftforge/errors.hpp"

namespace rftforge {

namespace {

// sum of integers in [a, b], 0 when the range is empty
double integer_range_sum(std::uint64_t a, std::uint64_t b) {
    if (b < a) return 0.0;
    const double lo = static_cast<double>(a), hi = static_cast<double>(b);
    return (lo + hi) * (hi - lo + 1.0) / 2.0;
}

} // namespace

double ModelShape::n() const {
    if (n_nonembed) return *n_nonembed;
    const double d = static_cast<double>(d_model);
    return 12.0 * static_cast<double>(n_layer) * d * d;
}

double train_flops(const ModelShape& m, const WorkloadSpec& w) {
    return 6.0 * m.n() * static_cast<double>(w.n_ctx()) *
           static_cast<double>(w.n_samples) * static_cast<double>(w.epochs);
}

double forward_flops_per_token(const ModelShape& m, std::uint64_t n_ctx) {
    return 2.0 * m.n() + 2.0 * static_cast<double>(m.n_layer) *
                             static_cast<double>(n_ctx) * static_cast<double>(m.d_model);
}

double kv_cache_flops(const ModelShape& m) {
    const double d = static_cast<double>(m.d_model);
    return 4.0 * static_cast<double>(m.n_layer) * d * d;
}

double decode_flops_per_token(const ModelShape& m, std::uint64_t n_ctx) {
    return forward_flops_per_token(m, n_ctx) - kv_cache_flops(m);
}

double decode_flops_per_token_approx(const ModelShape& m, std::uint64_t n_ctx) {
    return 1.66 * m.n() + 2.0 * static_cast<double>(m.n_layer) *
                              static_cast<double>(n_ctx) * static_cast<double>(m.d_model);
}

double inference_flops(const ModelShape& m, const WorkloadSpec& w) {
    const double per_ctx = 2.0 * static_cast<double>(m.n_layer) * static_cast<double>(m.d_model);
    const double nq = static_cast<double>(w.n_q);
    const double nr = static_cast<double>(w.n_r);

    const double prefill = nq * 2.0 * m.n() + per_ctx * integer_range_sum(1, w.n_q);
    double decode = 0.0;
    if (w.n_r > 0) {
        decode = nr * (2.0 * m.n() - kv_cache_flops(m)) +
                 per_ctx * integer_range_sum(w.n_q, w.n_q + w.n_r - 1);
    }
    return static_cast<double>(w.n_samples) * (prefill + decode);
}

double inference_flops_flat_prefill(const ModelShape& m, const WorkloadSpec& w) {
    const double prefill = static_cast<double>(w.n_q) * forward_flops_per_token(m, w.n_q);
    double decode = 0.0;
    if (w.n_r > 0) {
        const double per_ctx = 2.0 * static_cast<double>(m.n_layer) * static_cast<double>(m.d_model);
        decode = static_cast<double>(w.n_r) * (2.0 * m.n() - kv_cache_flops(m)) +
                 per_ctx * integer_range_sum(w.n_q, w.n_q + w.n_r - 1);
    }
    return static_cast<double>(w.n_samples) * (prefill + decode);
}

double gpu_hours(double flops, double throughput_flops_per_s, double utilization) {
    if (flops < 0) throw Error(Errc::invalid_argument, "flops must be non-negative");
    if (!(throughput_flops_per_s > 0)) throw Error(Errc::invalid_argument, "throughput must be positive");
    if (!(utilization > 0) || utilization > 1)
        throw Error(Errc::invalid_argument, "utilization must be in (0,1]");
    return flops / (throughput_flops_per_s * utilization * 3600.0);
}

} // namespace rftforge
