#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace massaction::detail {

// Runs body(0..count-1) across up to `jobs` worker threads. The first thrown
// exception is rethrown on the caller after all workers stop.
template <typename F>
void run_parallel(std::size_t count, std::size_t jobs, F&& body) {
    if (count == 0) {
        return;
    }
    jobs = std::min(std::max<std::size_t>(jobs, 1), count);
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    {
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                while (!failed.load(std::memory_order_relaxed)) {
                    const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= count) {
                        return;
                    }
                    try {
                        body(i);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                        failed.store(true, std::memory_order_relaxed);
                        return;
                    }
                }
            });
        }
    }

    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace massaction::detail
