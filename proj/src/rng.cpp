#include "padicfk/rng.hpp"

#include <stdexcept>

namespace padicfk {

std::array<uint64_t, 4> Philox4x64::block(std::array<uint64_t, 4> counter,
                                          std::array<uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        unsigned __int128 prod0 = static_cast<unsigned __int128>(kMul0) * counter[0];
        unsigned __int128 prod1 = static_cast<unsigned __int128>(kMul1) * counter[2];
        uint64_t hi0 = static_cast<uint64_t>(prod0 >> 64);
        uint64_t lo0 = static_cast<uint64_t>(prod0);
        uint64_t hi1 = static_cast<uint64_t>(prod1 >> 64);
        uint64_t lo1 = static_cast<uint64_t>(prod1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream) : key_{seed, stream} {}

void CounterRng::refill() {
    buffer_ = Philox4x64::block({block_index_, 0, 0, 0}, key_);
    block_index_ += 1;
    buffer_pos_ = 0;
}

uint64_t CounterRng::next_u64() {
    if (buffer_pos_ >= 4) refill();
    return buffer_[static_cast<size_t>(buffer_pos_++)];
}

double CounterRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint32_t CounterRng::next_digit(uint32_t p) {
    if (p < 2) throw std::invalid_argument("next_digit: base must be >= 2");
    if (digit_pool_base_ != p || digit_pool_count_ == 0) {
        if (p == 2) {
            // A full word is exactly 64 binary digits.
            digit_pool_ = next_u64();
            digit_pool_count_ = 64;
        } else {
            // Largest p^k <= 2^64; rejection above the last whole multiple of
            // p^k keeps every digit exactly uniform.
            uint64_t cap = 1;
            int count = 0;
            while (cap <= UINT64_MAX / p) {
                cap *= p;
                ++count;
            }
            uint64_t limit = (UINT64_MAX / cap) * cap;
            uint64_t u;
            do {
                u = next_u64();
            } while (u >= limit);
            digit_pool_ = u % cap;
            digit_pool_count_ = count;
        }
        digit_pool_base_ = p;
    }
    uint32_t d = static_cast<uint32_t>(digit_pool_ % p);
    digit_pool_ /= p;
    digit_pool_count_ -= 1;
    return d;
}

uint32_t CounterRng::next_unit_digit(uint32_t p) {
    uint32_t d;
    do {
        d = next_digit(p);
    } while (d == 0);
    return d;
}

uint64_t CounterRng::next_below(uint64_t n) {
    if (n == 0) throw std::invalid_argument("next_below: empty range");
    uint64_t groups = UINT64_MAX / n;
    uint64_t limit = groups * n;
    uint64_t u;
    do {
        u = next_u64();
    } while (u >= limit);
    return u % n;
}

} // namespace padicfk
