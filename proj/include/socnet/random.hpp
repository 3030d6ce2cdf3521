#pragma once

#include <cstdint>

namespace socnet {

/// Portable 64-bit generator: xorshift64* seeded through splitmix64.
///
///   seed:   state = splitmix64(seed); if state == 0 then state = 0x9E3779B97F4A7C15
///   next(): state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
///           return state * 0x2545F4914F6CDD1D   (mod 2^64)
///   splitmix64(z): z += 0x9E3779B97F4A7C15;
///                  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
///                  z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
///                  return z ^ (z >> 31)
///   uniform():     (next() >> 11) * 2^-53, in [0, 1)
///   below(n):      high 64 bits of next() * n, in [0, n)
///
/// Every draw is defined on unsigned integers, so sequences are identical on
/// every platform and compiler.
class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
        if (state_ == 0) {
            state_ = 0x9E3779B97F4A7C15ULL;
        }
    }

    std::uint64_t next() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t below(std::uint64_t n) { return mulhi(next(), n); }

    bool bernoulli(double p) { return uniform() < p; }

    static std::uint64_t splitmix64(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent stream for a labelled sub-task (e.g. one video).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
        return splitmix64(seed ^ splitmix64(label + 0x632BE59BD9B4E019ULL));
    }

    /// High 64 bits of the 128-bit product a * b.
    static std::uint64_t mulhi(std::uint64_t a, std::uint64_t b) {
        const std::uint64_t a_lo = a & 0xFFFFFFFFULL, a_hi = a >> 32;
        const std::uint64_t b_lo = b & 0xFFFFFFFFULL, b_hi = b >> 32;
        const std::uint64_t lo_lo = a_lo * b_lo;
        const std::uint64_t hi_lo = a_hi * b_lo;
        const std::uint64_t lo_hi = a_lo * b_hi;
        const std::uint64_t cross = (lo_lo >> 32) + (hi_lo & 0xFFFFFFFFULL) + lo_hi;
        return a_hi * b_hi + (hi_lo >> 32) + (cross >> 32);
    }

private:
    std::uint64_t state_;
};

}  // namespace socnet
