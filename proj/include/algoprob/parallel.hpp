#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace algoprob {

// Split [0, total) into fixed-size chunks, fold each chunk into its own
// accumulator on a pool of `workers` threads, then merge the chunk results
// in chunk order. Chunk boundaries depend only on `total` and `chunk_size`,
// so the result does not depend on the worker count or on scheduling.
template <typename Acc, typename MakeAcc, typename Process, typename Merge>
Acc parallel_reduce(std::uint64_t total, std::uint64_t chunk_size, unsigned workers, MakeAcc make_acc,
                    Process process, Merge merge) {
    chunk_size = std::max<std::uint64_t>(chunk_size, 1);
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    std::vector<Acc> partial;
    partial.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) partial.push_back(make_acc());

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                const std::uint64_t begin = c * chunk_size;
                process(partial[c], begin, std::min(total, begin + chunk_size));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };

    workers = std::max(1U, workers);
    if (workers == 1 || chunks <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < std::min<std::uint64_t>(workers, chunks); ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    Acc result = make_acc();
    for (auto& p : partial) merge(result, std::move(p));
    return result;
}

} // namespace algoprob
