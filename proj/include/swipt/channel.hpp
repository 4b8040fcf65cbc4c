#pragma once

#include <array>
#include <cstdint>

namespace swipt {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3", SC'11). Pure: the output depends only on
/// (counter, key).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is the 64-bit seed, the upper half
/// of the counter is the 64-bit stream id and the lower half counts blocks,
/// so (seed, stream_id) fully determines the sequence and streams can be
/// created in any order on any thread.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double next_uniform();
    /// Exponential with the given mean, by inversion.
    double next_exponential(double mean);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    unsigned used_ = 4;
};

/// One quasi-static fading draw: squared channel magnitudes |h_A|^2, |h_B|^2.
struct ChannelRealization {
    double gain_a = 0.0;
    double gain_b = 0.0;
};

/// Rayleigh fading: both squared gains are independent exponentials.
ChannelRealization sample_realization(double lambda_a, double lambda_b, RngStream& rng);

} // namespace swipt
