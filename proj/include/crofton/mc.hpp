#pragma once

#include <atomic>
#include <cstdint>
#include <cmath>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "crofton/errors.hpp"
#include "crofton/rng.hpp"

namespace crofton {

struct McConfig {
    std::uint64_t seed = 42;
    std::uint64_t samples = 1'000'000;
    std::uint64_t chunk = 10'000;

    void validate() const {
        if (samples < 1000) throw DomainError("McConfig: samples must be >= 1000");
        if (chunk == 0 || samples % chunk != 0)
            throw DomainError("McConfig: chunk must divide samples");
    }
};

struct McEstimate {
    double mean = 0;
    double se = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> tail;  // separately reported truncation tail, when applicable
};

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on the given number
// of workers. Results must be written to per-index slots by the caller;
// reductions happen afterwards in fixed index order, so the outcome does not
// depend on the worker count.
inline void parallel_chunks(std::uint64_t n_chunks, int threads,
                            const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 0) threads = int(std::thread::hardware_concurrency());
    if (threads <= 1 || n_chunks <= 1) {
        for (std::uint64_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= n_chunks) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int n = std::min<std::uint64_t>(threads, n_chunks);
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

namespace detail {

struct ChunkStat {
    double sum = 0;
    double sumsq = 0;
    std::uint64_t n = 0;
};

// Pool per-chunk partial sums in index order and form mean/se. scale maps the
// raw per-sample mean onto the target quantity.
inline McEstimate pool_chunks(const std::vector<ChunkStat>& stats, double scale,
                              std::uint64_t seed) {
    double sum = 0, sumsq = 0;
    std::uint64_t n = 0;
    for (const auto& c : stats) {
        sum += c.sum;
        sumsq += c.sumsq;
        n += c.n;
    }
    McEstimate e;
    e.samples = n;
    e.seed = seed;
    double mean = sum / double(n);
    double var = 0;
    if (n > 1) var = std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1));
    e.mean = scale * mean;
    e.se = scale * std::sqrt(var / double(n));
    return e;
}

}  // namespace detail

// Estimates scale * E[kernel(rng)] with deterministic chunked streams.
// stream_salt separates independent estimators that share one seed.
template <class Kernel>
McEstimate mc_mean(const McConfig& cfg, int threads, double scale, Kernel&& kernel,
                   std::uint64_t stream_salt = 0) {
    cfg.validate();
    std::uint64_t n_chunks = cfg.samples / cfg.chunk;
    std::vector<detail::ChunkStat> stats(n_chunks);
    parallel_chunks(n_chunks, threads, [&](std::uint64_t ci) {
        Rng rng(cfg.seed, stream_salt * 0x100000000ULL + ci);
        detail::ChunkStat st;
        st.n = cfg.chunk;
        for (std::uint64_t i = 0; i < cfg.chunk; ++i) {
            double v = kernel(rng);
            st.sum += v;
            st.sumsq += v * v;
        }
        stats[ci] = st;
    });
    return detail::pool_chunks(stats, scale, cfg.seed);
}

}  // namespace crofton
