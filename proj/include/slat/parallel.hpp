#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace slat {

inline unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Run fn(block_index) for block_index in [0, n_blocks) on a pool of
/// workers. Blocks are claimed dynamically; callers must write results into
/// per-block slots and reduce in block order afterwards, so the outcome
/// does not depend on the thread count.
inline void run_blocks(std::size_t n_blocks, int threads,
                       const std::function<void(std::size_t)>& fn) {
    unsigned n_threads = resolve_threads(threads);
    if (n_threads <= 1 || n_blocks <= 1) {
        for (std::size_t i = 0; i < n_blocks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= n_blocks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace slat
