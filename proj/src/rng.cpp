#include "diqpq/rng.hpp"

namespace diqpq {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_(mix64(mix64(seed + kGolden) ^ (stream_id + 0x6A09E667F3BCC909ULL))),
      state_(key_) {}

RngStream::RngStream(RawKey raw) : key_(raw.value), state_(raw.value) {}

std::uint64_t RngStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RngStream::bit() {
    return static_cast<int>(next_u64() >> 63);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    return next_u64() % bound;
}

RngStream RngStream::substream(std::uint64_t id) const {
    return RngStream(RawKey{mix64(key_ ^ mix64(id + kGolden))});
}

std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed ^ 0x5851F42D4C957F2DULL) + index);
}

} // namespace diqpq
