#pragma once

/**
 * @file parallel.hpp
 * @brief Ordered chunked reduction. Work is cut into fixed-size chunks independent of the
 * thread count; chunk partials are combined in chunk order, so results are bitwise identical
 * for any number of workers.
 */

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qherm {

namespace detail {

inline std::atomic<unsigned>& forced_workers() {
    static std::atomic<unsigned> n{0};
    return n;
}

} // namespace detail

/// Forces an exact worker count (ignoring hardware and QHERM_THREADS); 0 restores the default.
inline void set_worker_count(unsigned n) { detail::forced_workers() = n; }

/// The forced count if set, else hardware threads capped by QHERM_THREADS; at least 1.
[[nodiscard]] inline unsigned worker_count() {
    if (const unsigned forced = detail::forced_workers()) return forced;
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("QHERM_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
        }
    }
    return n;
}

inline constexpr std::size_t reduce_chunk = 512;

/**
 * Sums term(i, acc) over i in [0, count): each chunk starts from `zero`, accumulates its
 * indices in increasing order, and chunks are folded left to right with add(total, part).
 */
template <class T, class Term, class Add>
[[nodiscard]] T ordered_reduce(std::size_t count, const T& zero, Term&& term, Add&& add) {
    const std::size_t chunks = (count + reduce_chunk - 1) / reduce_chunk;
    std::vector<T> partial(chunks, zero);
    const auto run_chunk = [&](std::size_t c) {
        const std::size_t end = std::min(count, (c + 1) * reduce_chunk);
        for (std::size_t i = c * reduce_chunk; i < end; ++i) term(i, partial[c]);
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t c = next++; c < chunks; c = next++) run_chunk(c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = chunks;
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    T total = zero;
    for (const T& p : partial) add(total, p);
    return total;
}

/// Runs body(i) for i in [0, count) on the worker pool; no ordering between indices.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    struct Nothing {};
    (void)ordered_reduce(count, Nothing{}, [&](std::size_t i, Nothing&) { body(i); }, [](Nothing&, const Nothing&) {});
}

} // namespace qherm
