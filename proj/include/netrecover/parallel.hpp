#pragma once

// Minimal fork-join helper: run fn(i) for i in [begin, end) on up to
// `workers` threads. Work items are claimed through an atomic counter, so
// callers must write results into disjoint slots. The first exception thrown
// by any worker is rethrown on the calling thread after all workers join.

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netrecover {

inline int default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Fn>
void parallel_for(int begin, int end, int workers, Fn&& fn) {
    if (end <= begin) return;
    const int count = end - begin;
    if (workers > count) workers = count;
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }

    std::atomic<int> next(begin);
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto body = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= end) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace netrecover
