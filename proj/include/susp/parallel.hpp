#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace susp {

/// Applies fn to every index in [0, count) across a worker pool and returns
/// the results in index order, so parallel runs produce byte-identical
/// output.  The first exception thrown by any worker is rethrown on the
/// calling thread after all workers have stopped.
template <typename Out, typename Fn>
std::vector<Out> parallel_map(std::size_t count, std::size_t threads, const Fn& fn) {
    std::vector<Out> results(count);
    if (count == 0) return results;

    std::size_t workers = threads > 0 ? threads : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (workers > count) workers = count;

    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (std::thread& t : pool) t.join();

    if (failed.load()) std::rethrow_exception(error);
    return results;
}

} // namespace susp
