#pragma once

// Deterministic parallel map over an index range.  Workers pull chunks
// from a shared counter and write results into caller-owned slots, so
// output never depends on thread scheduling.  Thread count comes from
// CAGE_THREADS (clamped to >= 1), defaulting to the hardware count.

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cage {

inline int worker_count() {
    if (const char* env = std::getenv("CAGE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

template <typename Fn>
void parallel_for(size_t n, Fn&& fn, size_t chunk = 64) {
    const int workers = worker_count();
    if (workers <= 1 || n <= chunk) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    auto run = [&] {
        for (;;) {
            const size_t begin = next.fetch_add(chunk);
            if (begin >= n) return;
            const size_t end = std::min(n, begin + chunk);
            for (size_t i = begin; i < end; ++i) fn(i);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace cage
