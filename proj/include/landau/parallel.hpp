#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace landau {

/// Worker count: LANDAU_THREADS when set and positive, else the hardware
/// concurrency (at least 1).
inline unsigned thread_count()
{
    if (const char *env = std::getenv("LANDAU_THREADS")) {
        try {
            const long n = std::stol(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(worker, begin, end) over contiguous blocks of [0, n). Blocks are
/// fixed by (n, workers) so results that are written per index are
/// independent of scheduling. The first exception thrown is rethrown.
template <class Body>
void parallel_blocks(std::size_t n, Body &&body)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        body(0u, std::size_t{0}, n);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

template <class Fn>
void parallel_for(std::size_t n, Fn &&fn)
{
    parallel_blocks(n, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
    });
}

} // namespace landau
