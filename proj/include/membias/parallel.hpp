#pragma once

#include <cstdlib>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

namespace membias {

// Thread count: MEMBIAS_THREADS env var if set, else hardware concurrency.
inline unsigned thread_count() {
    if (const char* env = std::getenv("MEMBIAS_THREADS")) {
        const long n = std::atol(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

// Fixed chunk size for batch-level parallelism. Chunk boundaries never depend
// on the thread count, and chunk results are combined in ascending chunk
// order, so outputs are bitwise identical for any MEMBIAS_THREADS value.
inline constexpr std::size_t kParallelChunk = 16;

// Runs body(chunk_index, begin, end) over [0, n) split into fixed-size chunks.
// Each chunk index is processed by exactly one thread; bodies must write only
// chunk-local state (indexed by chunk_index).
template <class Body>
void for_each_chunk(std::size_t n, Body&& body) {
    const std::size_t n_chunks = (n + kParallelChunk - 1) / kParallelChunk;
    if (n_chunks == 0) return;
    const unsigned threads = thread_count();
    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            body(c, c * kParallelChunk, std::min(n, (c + 1) * kParallelChunk));
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < n_chunks; c += workers)
                body(c, c * kParallelChunk, std::min(n, (c + 1) * kParallelChunk));
        });
    }
    for (auto& t : pool) t.join();
}

inline std::size_t chunk_count(std::size_t n) {
    return (n + kParallelChunk - 1) / kParallelChunk;
}

}  // namespace membias
