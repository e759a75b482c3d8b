#pragma once
// Deterministic parallel loop over independent indices.  Each index writes
// only its own result slot and every per-index reduction runs sequentially,
// so results are bit-identical across thread counts.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace muskat {

// Global worker count; 0 = hardware concurrency.  Set from --threads or the
// MUSKAT_THREADS environment variable.
void set_threads(int n);
int thread_count();

template <typename Fn>
void parallel_for(int begin, int end, const Fn& body) {
    const int count = end - begin;
    if (count <= 0) return;
    const int workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace muskat
