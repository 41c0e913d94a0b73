#pragma once

#include <cstddef>
#include <cstdint>

namespace massaction {

// Counter-free deterministic generator: splitmix64 over a keyed state, with
// a per-stream increment derived from the (seed, stream) key so distinct
// streams are not shifted copies of each other. The same (seed, stream) pair
// yields the same variate sequence on every platform.
class RngStream {
public:
    // Bumped whenever the mixing functions or variate mappings change.
    static constexpr const char* kAlgorithmId = "splitmix64-kdf/1";

    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform on [0, 1): top 53 bits scaled by 2^-53.
    double u01();

    // Uniform on [0, 1]: top 53 bits scaled by 1/(2^53 - 1).
    double u01_closed();

    // Uniform on {0, ..., bound-1}, unbiased (multiply-shift with rejection).
    std::size_t uniform_index(std::size_t bound);

    bool bernoulli(double p) { return u01() < p; }

    // Child stream keyed by (a, b) off this stream's current position.
    // Does not advance this stream; children with distinct keys taken at the
    // same position are independent of the order they are later consumed in.
    RngStream substream(std::uint64_t a, std::uint64_t b = 0) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t state_ = 0;
    std::uint64_t gamma_ = 0;
};

}  // namespace massaction
