#ifndef TDP_PARALLEL_HPP
#define TDP_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace tdp {

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks, one per
// worker. Callers guarantee that distinct indices touch disjoint output slots,
// so the result is identical for any worker count; reductions over the slots
// are done sequentially by the caller in canonical index order.
template <typename F>
void parallel_for(std::size_t n, int threads, F&& fn)
{
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace tdp

#endif
