#ifndef FHS_PARALLEL_HPP
#define FHS_PARALLEL_HPP

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fhs {

// Static partition of [0, total) into at most `threads` contiguous chunks.
// Workers receive (worker_index, begin, end); the caller merges per-worker
// state in worker order, which keeps every aggregate independent of the
// thread count.
inline void parallel_chunks(std::uint64_t total, unsigned threads,
                            const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& work) {
    if (threads == 0) threads = 1;
    if (total == 0) return;
    if (threads > total) threads = static_cast<unsigned>(total);
    if (threads == 1) {
        work(0, 0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::vector<std::exception_ptr> errors(threads);
    const std::uint64_t base = total / threads;
    const std::uint64_t extra = total % threads;
    std::uint64_t begin = 0;
    for (unsigned wi = 0; wi < threads; ++wi) {
        const std::uint64_t len = base + (wi < extra ? 1 : 0);
        const std::uint64_t end = begin + len;
        pool.emplace_back([&, wi, begin, end]() {
            try {
                work(wi, begin, end);
            } catch (...) {
                errors[wi] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline unsigned default_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

} // namespace fhs

#endif
