#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace omit {

// Worker count: OMIT_WORKERS if set and positive, else the hardware concurrency.
inline int default_workers()
{
    if (const char* env = std::getenv("OMIT_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Calls f(i) for i in [0, n). Workers pull indices from a shared counter, so callers that
// write into slot i get results in index order. The first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, int workers, F&& f)
{
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!first) first = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace omit
