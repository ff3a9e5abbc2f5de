#pragma once

// Task farm over an index range. Results must be written to per-index slots;
// callers reduce sequentially afterwards, so output never depends on the
// worker count or completion order.

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlce {

inline unsigned hardware_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

template <class Fn>
void parallel_for(size_t count, unsigned workers, Fn&& fn) {
    if (workers == 0) workers = hardware_workers();
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    workers = unsigned(std::min<size_t>(workers, count));
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace nlce
