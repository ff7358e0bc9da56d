#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace gksiegel {

// Splits [0, total) into `threads` contiguous ranges and runs fn(slot, begin,
// end) on each. Callers merge per-slot results in slot order, which keeps
// every reduction bit-identical regardless of the worker count.
inline void run_partitioned(long long total, int threads,
                            const std::function<void(int, long long, long long)>& fn) {
    if (threads < 1) threads = 1;
    if (total <= 0) return;
    if (threads == 1) {
        fn(0, 0, total);
        return;
    }
    long long chunk = (total + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (int s = 0; s < threads; ++s) {
        long long b = s * chunk;
        long long e = std::min(total, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, s, b, e);
    }
    for (auto& t : pool) t.join();
}

inline int default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

} // namespace gksiegel
