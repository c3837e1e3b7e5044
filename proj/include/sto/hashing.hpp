#pragma once

#include <cstdint>
#include <vector>

#include "sto/errors.hpp"

namespace sto {

// Multiply-shift hash: eval(x) = ((a*x) mod 2^w) >> (w - q), with a odd.
// Range is [0, 2^q). The family is almost-linear: for all x, y,
//   eval(x+y) = eval(x) + eval(y) + carry (mod 2^q), carry in {0,1},
// almost-balanced, and spreads pairs like a universal family. The offset
// convention c_h is fixed to 0; callers absorb the carry by probing both
// candidate offsets.
struct AlmostLinearHash {
    uint64_t multiplier = 1;      // odd
    uint32_t word_bits = 64;      // w
    uint32_t range_bits = 1;      // q, range 2^q
    uint32_t offset_constant = 0; // c_h convention slot

    uint64_t range() const { return uint64_t{1} << range_bits; }

    uint64_t operator()(uint64_t x) const {
        uint64_t prod = multiplier * x;
        if (word_bits < 64) prod &= (uint64_t{1} << word_bits) - 1;
        return prod >> (word_bits - range_bits);
    }
};

// Multiplier drawn uniformly from the odd words; deterministic per seed.
// Requires 1 <= range_bits <= 63 (and range_bits <= word_bits).
AlmostLinearHash sample_hash(uint32_t range_bits, uint64_t seed);
AlmostLinearHash sample_hash(uint32_t word_bits, uint32_t range_bits, uint64_t seed);

inline uint64_t eval(const AlmostLinearHash& h, uint64_t x) { return h(x); }

// The additive carry of the family: (eval(x+y) - eval(x) - eval(y)) mod 2^q,
// reduced to the smallest non-negative representative. Always 0 or 1 for
// this construction. x+y is taken mod 2^w.
uint32_t linearity_defect(const AlmostLinearHash& h, uint64_t x, uint64_t y);

// Balance probe: hash the keys into 2^q buckets and count how many keys land
// in buckets holding more than 3*keys/2^q of them.
uint64_t count_overfull_elements(const AlmostLinearHash& h, const std::vector<uint64_t>& keys);

}  // namespace sto
