#pragma once

#include <array>
#include <cstdint>

namespace padicfk {

// Philox 4x64 with 10 rounds. Pure function of (counter, key); the key splits
// into (seed, stream) so disjoint streams never share a block.
struct Philox4x64 {
    static constexpr uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
    static constexpr uint64_t kMul1 = 0xCA5A826395121157ULL;
    static constexpr uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
    static constexpr uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

    static std::array<uint64_t, 4> block(std::array<uint64_t, 4> counter,
                                         std::array<uint64_t, 2> key);
};

// Counter-mode generator: key = (seed, stream), counter increments per block.
// Draw order within a stream is the block output order; all derived samplers
// (doubles, base-p digits, bounded integers) consume from this single stream,
// so a (seed, stream) pair fully determines every sample independently of
// scheduling.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream);

    uint64_t next_u64();
    // 53-bit mantissa uniform in [0, 1)
    double next_double();
    // uniform base-p digit in [0, p); batches digits out of one u64 draw with
    // top-range rejection, so each digit is exactly uniform
    uint32_t next_digit(uint32_t p);
    // uniform in [1, p)
    uint32_t next_unit_digit(uint32_t p);
    // uniform in [0, n)
    uint64_t next_below(uint64_t n);

    uint64_t seed() const { return key_[0]; }
    uint64_t stream() const { return key_[1]; }

private:
    void refill();

    std::array<uint64_t, 2> key_;
    uint64_t block_index_ = 0;
    std::array<uint64_t, 4> buffer_{};
    int buffer_pos_ = 4;

    uint64_t digit_pool_ = 0;
    int digit_pool_count_ = 0;  // base-p digits left in the pool
    uint32_t digit_pool_base_ = 0;
};

} // namespace padicfk
