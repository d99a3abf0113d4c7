#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rlim/bigint.hpp"

namespace rlim {

// Realization mode: the enhanced family admits the all-zero codeword, the
// non-enhanced family drops it and shifts the selected rank interval by one.
enum class Mode { Enhanced, NonEnhanced };

Mode mode_from_string(std::string_view text);  // accepts "E"/"N" (and long names)
char mode_char(Mode mode);
inline unsigned shift_delta(Mode mode) { return mode == Mode::NonEnhanced ? 1u : 0u; }

// |C_i(t)|: number of binary length-t words in which any two 1-bits are
// separated by at least `order` zeros.
Count family_size(unsigned order, unsigned length);

// Smallest codeword length n >= order+1 such that the internal family of
// length n-order can host 2^info_bits codewords (one more in non-enhanced
// mode, which drops the all-zero word).
unsigned shortest_length(unsigned order, unsigned info_bits, Mode mode);

struct CodeParams {
    unsigned order_i = 1;
    unsigned info_bits_k = 1;
    Mode mode = Mode::Enhanced;
    unsigned length_n = 2;   // codeword length in bits
    unsigned internal_T = 1; // length_n - order_i
    unsigned shift = 0;      // rank shift of the selected interval

    // Resolves the shortest admissible length for (order, info bits, mode).
    static CodeParams resolve(unsigned order, unsigned info_bits, Mode mode);
    // Uses an explicit codeword length; validates that the family is large
    // enough for 2^info_bits (+ shift) codewords.
    static CodeParams with_length(unsigned order, unsigned info_bits, Mode mode, unsigned length);

    Count message_count() const;  // 2^k
};

// Scan state while consuming a prefix of an internal word left to right.
// remaining_len/remaining_weight/forced_zeros index the counting table for
// the suffix; consumed_weight and trailing_zeros mirror the prefix itself.
struct PrefixState {
    unsigned remaining_len = 0;     // suffix length
    unsigned remaining_weight = 0;  // 1-bits still to place
    unsigned forced_zeros = 0;      // leading zeros the suffix must contain
    unsigned consumed_weight = 0;
    unsigned trailing_zeros = 0;    // zeros since the last consumed 1-bit

    static PrefixState initial(unsigned internal_len, unsigned target_weight) {
        return {internal_len, target_weight, 0, 0, 0};
    }
    // Advances over one bit. Consuming a 1 while zeros are still forced, or
    // with no remaining weight, is inadmissible and returns false.
    bool consume(unsigned order, std::uint8_t bit);
};

// Dense counting tables for one (order, internal length) pair, immutable
// after construction and safe to share across threads.
class CountingTables {
public:
    static CountingTables build(unsigned order, unsigned internal_len);

    unsigned order() const { return order_; }
    unsigned internal_len() const { return internal_len_; }

    // Admissible words of length len and weight w whose first min(fz,len)
    // bits are zero. Valid for len,w in 0..T and fz in 0..order.
    const Count& entry(unsigned len, unsigned w, unsigned fz) const {
        return entries_[(static_cast<std::size_t>(len) * (internal_len_ + 1) + w) * (order_ + 1) + fz];
    }

    unsigned max_weight() const { return max_weight_; }       // largest w with a nonzero layer
    const Count& layer_size(unsigned w) const;                // N(w), w in 0..max_weight
    const Count& layer_offset(unsigned w) const;              // cumulative offset, w in 0..max_weight+1
    const Count& family_total() const { return layer_offsets_.back(); }

    // Sum of the minimal storage widths of every stored integer (each entry
    // costs at least one bit). Container framing is not included.
    std::size_t stored_bit_count() const;

    // Versioned binary container: header then length-prefixed big-endian
    // magnitudes, row-major table entries followed by the layer arrays.
    void save(std::ostream& out) const;
    static CountingTables load(std::istream& in);

private:
    CountingTables() = default;

    unsigned order_ = 0;
    unsigned internal_len_ = 0;
    unsigned max_weight_ = 0;
    std::vector<Count> entries_;        // (T+1) x (T+1) x (order+1), row-major
    std::vector<Count> layer_sizes_;    // N(0..max_weight)
    std::vector<Count> layer_offsets_;  // 0..max_weight+1
};

inline CountingTables build_tables(unsigned order, unsigned internal_len) {
    return CountingTables::build(order, internal_len);
}

// Number of admissible completions of the current prefix whose next bit is
// zero. Zero when the prefix already fills the word.
Count count_with_zero(const CountingTables& tables, const PrefixState& state);

struct LayerLocation {
    unsigned weight = 0;  // w*
    Count within_rank;    // rank inside the fixed-weight layer
};

// Maps a global (enhanced-family) rank to its weight layer and the rank
// within that layer. Throws std::out_of_range past the family size.
LayerLocation locate_layer(const CountingTables& tables, const Count& rank);

}  // namespace rlim
