#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace coops {

// Runs fn(0..n-1) on up to nthreads workers. Work is split by index, and
// callers must write results into per-index slots, so the outcome is
// identical for every thread count.
inline void parallel_for(int nthreads, size_t n, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (nthreads <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t workers = std::min<size_t>(nthreads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace coops
