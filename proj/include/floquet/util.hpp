// util.hpp — Small shared helpers: parallel point loops, deterministic number formatting

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace floquet {

// Worker cap: min(hardware, jobs), further capped by the FF_THREADS env var.
inline int worker_count(int njobs) {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    n = std::min(n, njobs);
    if (const char* env = std::getenv("FF_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return std::max(n, 1);
}

// Runs fn(i) for i in [0, n). Work items must be independent; results should be
// written to pre-sized slots so output order stays deterministic.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = worker_count(n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

// Shortest exact decimal form; used everywhere a double reaches a file so that
// repeated runs stay byte-identical.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace floquet
