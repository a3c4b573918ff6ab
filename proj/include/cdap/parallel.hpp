#ifndef CDAP_PARALLEL_HPP
#define CDAP_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cdap {

// Runs fn(i) for i in [0, n) on up to `threads` workers using static
// contiguous chunks. Results must be written to per-index slots so the
// outcome is identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (n == 0) return;
    if (threads < 1) threads = 1;
    const std::size_t workers = std::min<std::size_t>(threads, n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto run_chunk = [&](std::size_t lo, std::size_t hi) {
        try {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        if (lo >= n) break;
        pool.emplace_back(run_chunk, lo, std::min(n, lo + chunk));
    }
    run_chunk(0, std::min(n, chunk));
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cdap

#endif
