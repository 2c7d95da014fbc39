#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace rftforge {

// --threads flag, then RFTFORGE_THREADS, then hardware concurrency.
inline unsigned resolve_threads(std::optional<unsigned> flag = std::nullopt) {
    if (flag && *flag > 0) return *flag;
    if (const char* env = std::getenv("RFTFORGE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static index partition; callers write results by index, so outputs are
// identical for any thread count. The lowest-index exception wins.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& fn) {
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned t = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> workers;
    workers.reserve(t);
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;

    for (unsigned w = 0; w < t; ++w) {
        workers.emplace_back([&, w] {
            const std::size_t begin = n * w / t;
            const std::size_t end = n * (w + 1) / t;
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (i < first_error_index) {
                        first_error_index = i;
                        first_error = std::current_exception();
                    }
                    break;
                }
            }
        });
    }
    for (std::thread& th : workers) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace rftforge
