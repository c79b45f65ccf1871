#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace speckle {

// Worker cap: SPECKLE_THREADS when set (>=1), else hardware concurrency.
inline unsigned worker_threads() {
    if (const char* env = std::getenv("SPECKLE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Index-parallel loop; results must be written to disjoint slots so the
// outcome is order-independent.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(worker_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace speckle
