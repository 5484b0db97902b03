#include "tpbem/parallel.hpp"

#include <atomic>

namespace tpbem {

namespace {
std::atomic<int> g_threads{0};
}

int thread_count() {
    int n = g_threads.load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_threads.store(n); }

void parallel_for(std::ptrdiff_t n, const std::function<void(std::ptrdiff_t, std::ptrdiff_t)>& body) {
    if (n <= 0) return;
    const int workers = std::min<std::ptrdiff_t>(thread_count(), n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::ptrdiff_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::ptrdiff_t lo = w * chunk;
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(lo + chunk, n);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace tpbem
