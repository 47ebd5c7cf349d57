#pragma once

#include <cstdint>

namespace diqpq {

// Counter-based pseudo-random stream (splitmix64 output function).
//
// A stream is identified by a 64-bit key derived from (seed, stream_id).
// Identical (seed, stream_id) pairs always produce identical sequences,
// on every platform, independent of how any other stream was consumed.
// Child streams derive from the key, not the current position, so a
// parent may be advanced arbitrarily before (or after) spawning children.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53 random bits.
    double uniform();

    /// Fair bit.
    int bit();

    /// Integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Independent stream keyed by (this stream, id).
    RngStream substream(std::uint64_t id) const;

    std::uint64_t key() const { return key_; }

private:
    struct RawKey {
        std::uint64_t value;
    };
    explicit RngStream(RawKey raw);

    std::uint64_t key_;
    std::uint64_t state_;
};

/// Trial seed used by the Monte Carlo harness for trial `index` under a
/// master seed; exposed so a single run_protocol call can be replayed.
std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t index);

} // namespace diqpq
