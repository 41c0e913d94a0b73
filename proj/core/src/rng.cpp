#include "massaction/rng.hpp"

#include <bit>
#include <cassert>

namespace massaction {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Stafford mix13 finalizer.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Odd increment with a balanced bit pattern, murmur3-style avalanche.
std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    if (std::popcount(z ^ (z >> 1)) < 24) {
        z ^= 0xAAAAAAAAAAAAAAAAULL;
    }
    return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    const std::uint64_t key =
        mix64(seed + kGolden) ^ mix64(stream * 0xA24BAED4963EE407ULL + 0x9FB21C651E98DF25ULL);
    state_ = mix64(key + kGolden);
    gamma_ = mix_gamma(key);
}

std::uint64_t RngStream::next_u64() {
    state_ += gamma_;
    return mix64(state_);
}

double RngStream::u01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::u01_closed() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740991.0);
}

std::size_t RngStream::uniform_index(std::size_t bound) {
    assert(bound > 0);
    const std::uint64_t range = bound;
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t child_seed = mix64(state_ ^ mix64(gamma_ + kGolden));
    const std::uint64_t child_stream = mix64(a + kGolden) ^ mix64(b + 0x3C6EF372FE94F82AULL);
    return RngStream(child_seed, child_stream);
}

}  // namespace massaction
