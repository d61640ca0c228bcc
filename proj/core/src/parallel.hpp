#pragma once
// Internal: fixed-batch worker pool. Batches are claimed dynamically but
// their results are owned per batch, so callers can reduce in batch order.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lfr::detail {

inline constexpr std::size_t kRaysPerBatch = 32768;

inline std::size_t batch_count(std::size_t n_rays) { return (n_rays + kRaysPerBatch - 1) / kRaysPerBatch; }

template <typename Fn>
void run_batches(std::size_t n_batches, unsigned threads, Fn&& fn) {
    unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, n_batches)));
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_batches; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1)) {
                try {
                    fn(b);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace lfr::detail
