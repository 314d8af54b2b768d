#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace qagap {

/// Static block partition of [0, jobs) over a fixed worker count. Results
/// must go to disjoint slots; the output is then independent of scheduling.
inline void parallel_for(int jobs, int threads, const std::function<void(int)>& body) {
    if (threads <= 1 || jobs <= 1) {
        for (int j = 0; j < jobs; ++j) body(j);
        return;
    }
    const int workers = std::min(threads, jobs);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([=, &body] {
            for (int j = w; j < jobs; j += workers) body(j);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace qagap
