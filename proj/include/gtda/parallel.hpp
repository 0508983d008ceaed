#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gtda {

/// Runs fn(worker, i) for i in [0, count) with worker in [0, workers).
/// Iterations are claimed in chunks by a small thread team; results are
/// deterministic as long as each iteration writes only its own output slots.
/// The worker id is stable within one call, for per-worker scratch space.
template <class Fn>
void parallel_for_indexed(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(0u, i);
        return;
    }
    const unsigned team = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    const std::size_t chunk = std::max<std::size_t>(1, count / (team * 8u));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&](unsigned worker) {
        for (;;) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= count || failed.load(std::memory_order_relaxed)) return;
            std::size_t end = std::min(begin + chunk, count);
            try {
                for (std::size_t i = begin; i < end; ++i) fn(worker, i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(team - 1);
    for (unsigned t = 1; t < team; ++t) pool.emplace_back(body, t);
    body(0);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

/// parallel_for_indexed without the worker id.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    parallel_for_indexed(count, workers, [&](unsigned, std::size_t i) { fn(i); });
}

}  // namespace gtda
