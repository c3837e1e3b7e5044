#include "sto/hashing.hpp"

#include "sto/rng.hpp"

namespace sto {

AlmostLinearHash sample_hash(uint32_t word_bits, uint32_t range_bits, uint64_t seed) {
    if (word_bits < 1 || word_bits > 64)
        throw validation_error("sample_hash: word_bits must be in [1, 64]");
    if (range_bits < 1 || range_bits > 63 || range_bits > word_bits)
        throw validation_error("sample_hash: range_bits must be in [1, 63] and <= word_bits");
    Rng rng(seed);
    AlmostLinearHash h;
    h.multiplier = rng.next() | 1;
    if (word_bits < 64) h.multiplier &= (uint64_t{1} << word_bits) - 1;
    h.word_bits = word_bits;
    h.range_bits = range_bits;
    h.offset_constant = 0;
    return h;
}

AlmostLinearHash sample_hash(uint32_t range_bits, uint64_t seed) {
    return sample_hash(64, range_bits, seed);
}

uint32_t linearity_defect(const AlmostLinearHash& h, uint64_t x, uint64_t y) {
    uint64_t sum = x + y;
    if (h.word_bits < 64) sum &= (uint64_t{1} << h.word_bits) - 1;
    uint64_t mask = h.range() - 1;
    // Wrap-around subtraction then mask: valid because 2^q divides 2^64.
    return static_cast<uint32_t>((h(sum) - h(x) - h(y)) & mask);
}

uint64_t count_overfull_elements(const AlmostLinearHash& h, const std::vector<uint64_t>& keys) {
    std::vector<uint64_t> load(h.range(), 0);
    for (uint64_t k : keys) ++load[h(k)];
    const uint64_t threshold = 3 * keys.size() / h.range();
    uint64_t overfull = 0;
    for (uint64_t c : load)
        if (c > threshold) overfull += c;
    return overfull;
}

}  // namespace sto
