#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rcmap {

namespace detail {

inline std::size_t& thread_override() {
    static std::size_t value = 0; // 0 = not set explicitly
    return value;
}

inline std::size_t env_thread_count() {
    const char* raw = std::getenv("RCMAP_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed < 0) return 0; // malformed: ignore
    return static_cast<std::size_t>(parsed);
}

} // namespace detail

// Resolution order: explicit set_thread_count > RCMAP_THREADS env var >
// hardware concurrency. Always at least 1.
inline std::size_t thread_count() {
    if (detail::thread_override() > 0) return detail::thread_override();
    const std::size_t from_env = detail::env_thread_count();
    if (from_env > 0) return from_env;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// count == 0 restores automatic selection.
inline void set_thread_count(std::size_t count) { detail::thread_override() = count; }

// Runs body(i) for i in [0, n). Work is split into contiguous static chunks
// so a given (n, thread count) always maps the same indices to the same
// worker; bodies must write only to their own slots. The first exception
// thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
    if (n == 0) return;
    const std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(begin + chunk, n);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace rcmap
