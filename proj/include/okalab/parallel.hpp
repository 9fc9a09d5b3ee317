#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace okalab {

// Worker count from OKALAB_THREADS, falling back to the hardware count.
inline unsigned worker_count() {
    if (const char* env = std::getenv("OKALAB_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(std::min(n, 256L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// out[i] = fn(i) for i in [0, n). Each slot is written by exactly one worker,
// so results do not depend on scheduling. The first exception (lowest index)
// is rethrown on the calling thread.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1 || n < 32) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t wkr = 0; wkr < workers; ++wkr) {
            pool.emplace_back([&, wkr] {
                for (std::size_t i = wkr; i < n; i += workers) {
                    try {
                        out[i] = fn(i);
                    } catch (...) {
                        std::lock_guard lock(err_mutex);
                        if (i < first_error_index) {
                            first_error_index = i;
                            first_error = std::current_exception();
                        }
                        return;
                    }
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace okalab
