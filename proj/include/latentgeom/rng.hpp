#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace latentgeom::numerics {

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw,
// "Parallel random numbers: as easy as 1, 2, 3", SC'11).  The key is the
// 64-bit seed, the upper counter half is the stream id and the lower half
// the draw position, so any (seed, stream_id) pair addresses an independent
// stream and replays bit-identically regardless of scheduling.
struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key) {
        std::array<std::uint32_t, 4> ctr = counter;
        std::array<std::uint32_t, 2> k = key;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
            const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
            ctr = {hi1 ^ ctr[1] ^ k[0], lo1, hi0 ^ ctr[3] ^ k[1], lo0};
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        return ctr;
    }
};

// SplitMix64 finalizer, used only to derive child stream ids.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

class RngStream {
public:
    RngStream() : RngStream(0, 0) {}
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Child stream for parallel chunks; derivation depends only on
    // (stream_id, child), never on draw position.
    RngStream split(std::uint64_t child) const {
        return RngStream(seed_, mix64(stream_id_ ^ mix64(child + 0x1D872B41BA5C417Full)));
    }

    std::uint32_t next_u32() {
        if (buf_pos_ == 4) refill();
        return buf_[buf_pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return double(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on the open interval (0, 1); safe under log().
    double uniform_pos() {
        return (double(next_u64() >> 12) + 0.5) * 0x1.0p-52;
    }

    // Standard normal via Box-Muller; the second variate of each pair is
    // cached so consecutive calls consume the stream in a fixed pattern.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            std::uint32_t(counter_), std::uint32_t(counter_ >> 32),
            std::uint32_t(stream_id_), std::uint32_t(stream_id_ >> 32)};
        const std::array<std::uint32_t, 2> key = {std::uint32_t(seed_),
                                                  std::uint32_t(seed_ >> 32)};
        buf_ = Philox4x32::block(ctr, key);
        ++counter_;
        buf_pos_ = 0;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace latentgeom::numerics
