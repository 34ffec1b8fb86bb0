#pragma once

#include <array>
#include <cstdint>

namespace wsncov {

/// Philox4x32-10 block function (Salmon et al.). Exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The seed is the Philox key; the stream id
/// occupies the upper half of the 128-bit counter and `position` the lower
/// half, so a (seed, stream_id) pair always reproduces the same sequence and
/// distinct stream ids never overlap.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of 64-bit words consumed so far.
    std::uint64_t position() const noexcept { return position_; }

    std::uint64_t next_u64();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal deviate (Box-Muller, pairs cached).
    double normal();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t stream_id) {
    return RngStream(seed, stream_id);
}

}  // namespace wsncov
