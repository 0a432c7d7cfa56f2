#pragma once

#include <array>
#include <cstdint>

namespace chd {

/// Philox4x32-10 counter-based generator. Draw i is a pure function of
/// (seed, stream, i), so sampling order and thread count never change the
/// stream. Verified against the published test vectors.
class Philox4x32 {
public:
    Philox4x32(std::uint64_t seed, std::uint64_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::array<std::uint32_t, 4> block(std::uint64_t i) const {
        std::uint32_t x0 = static_cast<std::uint32_t>(i);
        std::uint32_t x1 = static_cast<std::uint32_t>(i >> 32);
        std::uint32_t x2 = ctr2_;
        std::uint32_t x3 = ctr3_;
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                k0 += 0x9E3779B9u;
                k1 += 0xBB67AE85u;
            }
            const std::uint64_t p0 = 0xD2511F53ull * x0;
            const std::uint64_t p1 = 0xCD9E8D57ull * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
        }
        return {x0, x1, x2, x3};
    }

    /// Uniform double in [0, 1) from the top 53 bits of words 0 and 1.
    double uniform(std::uint64_t i) const {
        const auto out = block(i);
        const std::uint64_t bits =
            (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
        return static_cast<double>(bits >> 11) * 0x1.0p-53;
    }

private:
    std::uint32_t key0_, key1_;
    std::uint32_t ctr2_, ctr3_;
};

}  // namespace chd
