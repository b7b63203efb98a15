// parallel.hpp: Order-preserving parallel map over an index range

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qrim {

inline unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// out[i] = fn(i) for i in [0, n). Workers pull indices from a shared counter;
// results land in their own slot, so completion order never affects output order.
// The first exception thrown by fn is rethrown after all workers stop.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t n, Fn&& fn, unsigned workers = 0) {
    std::vector<Result> out(n);
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace qrim
