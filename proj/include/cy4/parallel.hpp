#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace cy4
{

// Runs body(i) for i in [0, count) on up to `workers` threads. Work items are
// claimed dynamically; if any throw, the exception of the lowest failing
// index is rethrown after all threads join.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body &&body)
{
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

// Default worker count: CY4_JOBS if set and positive, else hardware concurrency.
inline unsigned default_workers()
{
    if (const char *env = std::getenv("CY4_JOBS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

} // namespace cy4
