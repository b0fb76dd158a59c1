#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace fbmshot {

/// Counter-based stream splitting on top of xoshiro256++.
///
/// A single 64-bit master seed is expanded into independent streams that are
/// addressed by up to two lane counters, typically (replicate index, purpose).
/// The split is a pure function of (master, lane0, lane1): growing a replicate
/// count never re-correlates or reshuffles earlier streams, and workers on
/// different threads can derive their streams without coordination.
class Rng {
public:
    /// Stream addressed by (master, lane0, lane1).
    static Rng stream(std::uint64_t master, std::uint64_t lane0 = 0, std::uint64_t lane1 = 0);

    /// Next raw 64 bits.
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    /// Uniform on the open interval (0, 1).
    double uniform_open();

    /// Standard normal via Box-Muller (one spare cached).
    double normal();

    /// Strictly positive unit-rate exponential.
    double exponential();

private:
    Rng() = default;

    std::uint64_t state_[4] = {0, 0, 0, 0};
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; used by the stream derivation and tests.
std::uint64_t mix64(std::uint64_t z);

/// Runs fn(begin, end) over a partition of [0, count) on up to `threads`
/// OS threads (threads <= 1 runs inline). Chunk boundaries depend only on
/// (count, threads); callers that index output slots by replicate and derive
/// per-replicate streams get results independent of the thread count.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace fbmshot
