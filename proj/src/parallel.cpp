#include "campanato/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace campanato {

unsigned thread_count() {
    static const unsigned cached = [] {
        unsigned n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        n = std::min(n, 16u);
        if (const char* env = std::getenv("CAMPANATO_THREADS")) {
            const long cap = std::strtol(env, nullptr, 10);
            if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(std::min(cap, 64L)));
        }
        return n;
    }();
    return cached;
}

namespace {
thread_local bool inside_worker = false;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = thread_count();
    if (n == 0) return;
    // Nested regions run inline on their worker: the outermost loop already
    // occupies every core, and per-index slots keep results order-independent.
    if (inside_worker || workers == 1 || n < 2 * workers) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    const std::size_t chunk = (n + workers - 1) / workers;
    std::mutex err_mutex;
    std::exception_ptr first_error;

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            inside_worker = true;
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace campanato
