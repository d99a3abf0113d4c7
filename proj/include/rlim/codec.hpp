#pragma once

#include <memory>
#include <vector>

#include "rlim/bigint.hpp"
#include "rlim/bitword.hpp"
#include "rlim/enumeration.hpp"

namespace rlim {

// Codeword orderings: minimum-weight codes select by weight first, the
// classical run-length-limited baseline follows plain generation order.
enum class Ordering { WeightThenLex, LexGeneration };

// Receiver-side cleanup: rebuilds the nearest admissible word by keeping a
// received 1 only when enough zeros precede it. Total and distance-optimal.
BitWord correct_received(const BitWord& received, unsigned order);

struct ProjectionStep {
    BitWord word;   // candidate examined in this step
    Count rank;     // its family rank
    bool in_range;  // rank inside the selected interval
};

struct ProjectionResult {
    Count message;
    std::vector<ProjectionStep> steps;
};

// Weight-minimizing run-length-limited code: the 2^k lowest-weight words of
// the padded family, ranked weight-first then lexicographically.
class RlimCodec {
public:
    RlimCodec(CodeParams params, std::shared_ptr<const CountingTables> tables);
    static RlimCodec create(const CodeParams& params);

    const CodeParams& params() const { return params_; }
    const CountingTables& tables() const { return *tables_; }

    // Family rank of an admissible codeword. Throws std::invalid_argument
    // (naming the bit position) when the word violates the run constraint.
    Count rank_word(const BitWord& word) const;

    // Inverse of rank_word over the whole padded family, not just the
    // selected codebook. Throws std::out_of_range past the family size.
    BitWord word_at_rank(const Count& family_rank) const;

    // Codeword for message m in [0, 2^k).
    BitWord encode(const Count& message) const;

    BitWord correct(const BitWord& received) const;

    // Walks an admissible word down to the selected interval by clearing
    // rightmost 1-bits; the all-zero word falls back to message 0.
    Count project_decode(const BitWord& word) const;
    ProjectionResult project_decode_trace(const BitWord& word) const;

    // Full receiver: correction followed by projection.
    Count decode(const BitWord& received) const { return project_decode(correct(received)); }

    bool rank_in_code(const Count& rank) const;

    // Total Hamming weight of the selected codebook.
    Count codebook_weight() const;

private:
    CodeParams params_;
    std::shared_ptr<const CountingTables> tables_;
};

// Baseline code over the same padded family, but taking the 2^k first words
// in generation (lexicographic) order. Needs only length-indexed counts, no
// per-weight tables.
class RllLexCodec {
public:
    explicit RllLexCodec(CodeParams params);

    const CodeParams& params() const { return params_; }

    Count rank_word(const BitWord& word) const;
    BitWord encode(const Count& message) const;
    BitWord correct(const BitWord& received) const;
    Count project_decode(const BitWord& word) const;
    Count decode(const BitWord& received) const { return project_decode(correct(received)); }

    bool rank_in_code(const Count& rank) const;
    Count codebook_weight() const;

private:
    const Count& count_at(unsigned len, unsigned fz) const {
        return counts_[static_cast<std::size_t>(len) * (params_.order_i + 1) + fz];
    }
    const Count& weight_sum_at(unsigned len, unsigned fz) const {
        return weight_sums_[static_cast<std::size_t>(len) * (params_.order_i + 1) + fz];
    }
    // Sum of weights of the `first` lex-smallest internal words.
    Count weight_of_first(Count first) const;

    CodeParams params_;
    std::vector<Count> counts_;       // (T+1) x (order+1) admissible-word counts
    std::vector<Count> weight_sums_;  // matching total-weight table
};

// Explicit codeword table, packed row-major with ceil(n/8) bytes per word.
// Built by recursive generation of the family (independent of the counting
// tables, so it doubles as an oracle for the enumerative codecs): generation
// order is lexicographic, and a stable sort by weight yields the
// weight-then-lex order. Materialization refuses code sizes past
// `max_info_bits` so a mistyped k cannot silently allocate gigabytes.
class Codebook {
public:
    static constexpr unsigned kDefaultMaxInfoBits = 24;

    static Codebook materialize(const CodeParams& params, Ordering ordering,
                                unsigned max_info_bits = kDefaultMaxInfoBits);

    std::size_t size() const { return words_; }
    unsigned length() const { return length_; }
    BitWord word(std::size_t index) const;

    std::size_t packed_byte_size() const { return blob_.size(); }
    // Storage footprint of the plain listing: one bit per codeword bit.
    std::size_t listed_bit_count() const { return words_ * static_cast<std::size_t>(length_); }

private:
    Codebook() = default;

    std::size_t words_ = 0;
    unsigned length_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint8_t> blob_;
};

}  // namespace rlim
