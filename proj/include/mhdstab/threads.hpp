#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace mhdstab {

/// Worker count for internal parallel loops, capped by MHDSTAB_THREADS.
inline int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("MHDSTAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

/// Run fn(begin, end) over disjoint chunks of [0, count) on worker threads.
inline void parallel_chunks(long count, const std::function<void(long, long)>& fn) {
    const int nw = std::min<long>(worker_count(), std::max<long>(count, 1));
    if (nw <= 1 || count < 64) {
        fn(0, count);
        return;
    }
    std::vector<std::thread> pool;
    const long chunk = (count + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
        const long b = w * chunk;
        const long e = std::min(count, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e);
    }
    for (auto& t : pool) t.join();
}

} // namespace mhdstab
