#include "rlim/codec.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace rlim {
namespace {

void check_word_length(const BitWord& word, unsigned expected) {
    if (word.size() != expected)
        throw std::invalid_argument("word has " + std::to_string(word.size()) +
                                    " bits, codec expects " + std::to_string(expected));
}

[[noreturn]] void throw_inadmissible(std::size_t position) {
    throw std::invalid_argument("word violates the run constraint at bit " +
                                std::to_string(position));
}

void check_message_range(const Count& message, const CodeParams& params) {
    if (message < 0 || message >= params.message_count())
        throw std::invalid_argument("message " + message.str() + " is outside [0, 2^" +
                                    std::to_string(params.info_bits_k) + ")");
}

}  // namespace

BitWord correct_received(const BitWord& received, unsigned order) {
    BitWord out(received.size());
    unsigned skip = order;  // leading zeros are part of every codeword
    for (std::size_t j = 0; j < received.size(); ++j) {
        if (skip > 0) {
            --skip;
        } else if (received[j]) {
            out.set(j, 1);
            skip = order;
        }
    }
    return out;
}

RlimCodec::RlimCodec(CodeParams params, std::shared_ptr<const CountingTables> tables)
    : params_(params), tables_(std::move(tables)) {
    if (!tables_) throw std::invalid_argument("codec requires counting tables");
    if (tables_->order() != params_.order_i || tables_->internal_len() != params_.internal_T)
        throw std::invalid_argument("counting tables do not match the code parameters");
}

RlimCodec RlimCodec::create(const CodeParams& params) {
    return RlimCodec(params, std::make_shared<CountingTables>(
                                 CountingTables::build(params.order_i, params.internal_T)));
}

Count RlimCodec::rank_word(const BitWord& word) const {
    check_word_length(word, params_.length_n);
    if (const std::size_t bad = word.first_violation(params_.order_i); bad != BitWord::npos)
        throw_inadmissible(bad);

    unsigned weight = 0;
    for (std::size_t j = params_.order_i; j < word.size(); ++j) weight += word[j];

    Count within = 0;
    PrefixState state = PrefixState::initial(params_.internal_T, weight);
    for (std::size_t j = params_.order_i; j < word.size(); ++j) {
        const std::uint8_t bit = word[j];
        if (bit) within += count_with_zero(*tables_, state);
        if (!state.consume(params_.order_i, bit))
            throw_inadmissible(j);  // unreachable after the violation scan
    }
    return tables_->layer_offset(weight) + within;
}

BitWord RlimCodec::word_at_rank(const Count& family_rank) const {
    const LayerLocation loc = locate_layer(*tables_, family_rank);
    BitWord word(params_.length_n);
    Count remaining = loc.within_rank;
    PrefixState state = PrefixState::initial(params_.internal_T, loc.weight);
    for (std::size_t j = params_.order_i; j < params_.length_n; ++j) {
        const Count zeros = count_with_zero(*tables_, state);
        std::uint8_t bit = 0;
        if (remaining >= zeros) {
            bit = 1;
            remaining -= zeros;
        }
        word.set(j, bit);
        state.consume(params_.order_i, bit);
    }
    if (!remaining.is_zero())
        throw std::logic_error("unranking left a nonzero residue");
    return word;
}

BitWord RlimCodec::encode(const Count& message) const {
    check_message_range(message, params_);
    return word_at_rank(message + params_.shift);
}

BitWord RlimCodec::correct(const BitWord& received) const {
    check_word_length(received, params_.length_n);
    return correct_received(received, params_.order_i);
}

bool RlimCodec::rank_in_code(const Count& rank) const {
    return rank >= params_.shift && rank < params_.shift + params_.message_count();
}

Count RlimCodec::project_decode(const BitWord& word) const {
    BitWord candidate = word;
    while (true) {
        if (candidate.all_zero()) return Count(0);
        const Count rank = rank_word(candidate);
        if (rank_in_code(rank)) return rank - params_.shift;
        candidate.set(candidate.rightmost_one(), 0);
    }
}

ProjectionResult RlimCodec::project_decode_trace(const BitWord& word) const {
    ProjectionResult result;
    BitWord candidate = word;
    while (true) {
        if (candidate.all_zero()) {
            result.steps.push_back({candidate, Count(0), rank_in_code(Count(0))});
            result.message = 0;
            return result;
        }
        const Count rank = rank_word(candidate);
        const bool hit = rank_in_code(rank);
        result.steps.push_back({candidate, rank, hit});
        if (hit) {
            result.message = rank - params_.shift;
            return result;
        }
        candidate.set(candidate.rightmost_one(), 0);
    }
}

Count RlimCodec::codebook_weight() const {
    const Count lo = Count(params_.shift);
    const Count hi = lo + params_.message_count();
    Count total = 0;
    for (unsigned w = 0; w <= tables_->max_weight(); ++w) {
        const Count& begin = tables_->layer_offset(w);
        const Count& end = tables_->layer_offset(w + 1);
        const Count a = begin > lo ? begin : lo;
        const Count b = end < hi ? end : hi;
        if (b > a) total += Count(w) * (b - a);
    }
    return total;
}

RllLexCodec::RllLexCodec(CodeParams params) : params_(params) {
    const unsigned T = params_.internal_T;
    const unsigned order = params_.order_i;
    const std::size_t rdim = order + 1;
    counts_.assign((T + 1) * rdim, Count(0));
    weight_sums_.assign((T + 1) * rdim, Count(0));
    auto cnt = [&](unsigned len, unsigned fz) -> Count& { return counts_[len * rdim + fz]; };
    auto wsum = [&](unsigned len, unsigned fz) -> Count& { return weight_sums_[len * rdim + fz]; };
    for (unsigned fz = 0; fz <= order; ++fz) cnt(0, fz) = 1;
    for (unsigned len = 1; len <= T; ++len) {
        for (unsigned fz = 1; fz <= order; ++fz) {
            cnt(len, fz) = cnt(len - 1, fz - 1);
            wsum(len, fz) = wsum(len - 1, fz - 1);
        }
        // Free first bit: the 1-branch adds one to every word it contains.
        cnt(len, 0) = cnt(len - 1, 0) + cnt(len - 1, order);
        wsum(len, 0) = wsum(len - 1, 0) + wsum(len - 1, order) + cnt(len - 1, order);
    }
}

Count RllLexCodec::rank_word(const BitWord& word) const {
    check_word_length(word, params_.length_n);
    if (const std::size_t bad = word.first_violation(params_.order_i); bad != BitWord::npos)
        throw_inadmissible(bad);

    Count rank = 0;
    unsigned len = params_.internal_T;
    unsigned fz = 0;
    for (std::size_t j = params_.order_i; j < word.size(); ++j) {
        const unsigned down = fz > 0 ? fz - 1 : 0;
        if (word[j]) {
            rank += count_at(len - 1, down);
            fz = params_.order_i;
        } else {
            fz = down;
        }
        --len;
    }
    return rank;
}

BitWord RllLexCodec::encode(const Count& message) const {
    check_message_range(message, params_);
    Count remaining = message + params_.shift;
    if (remaining >= count_at(params_.internal_T, 0))
        throw std::out_of_range("rank exceeds the family size");
    BitWord word(params_.length_n);
    unsigned len = params_.internal_T;
    unsigned fz = 0;
    for (std::size_t j = params_.order_i; j < params_.length_n; ++j) {
        const unsigned down = fz > 0 ? fz - 1 : 0;
        const Count& zeros = count_at(len - 1, down);
        if (remaining < zeros) {
            fz = down;
        } else {
            remaining -= zeros;
            word.set(j, 1);
            fz = params_.order_i;
        }
        --len;
    }
    if (!remaining.is_zero()) throw std::logic_error("unranking left a nonzero residue");
    return word;
}

BitWord RllLexCodec::correct(const BitWord& received) const {
    check_word_length(received, params_.length_n);
    return correct_received(received, params_.order_i);
}

bool RllLexCodec::rank_in_code(const Count& rank) const {
    return rank >= params_.shift && rank < params_.shift + params_.message_count();
}

Count RllLexCodec::project_decode(const BitWord& word) const {
    BitWord candidate = word;
    while (true) {
        if (candidate.all_zero()) return Count(0);
        const Count rank = rank_word(candidate);
        if (rank_in_code(rank)) return rank - params_.shift;
        candidate.set(candidate.rightmost_one(), 0);
    }
}

Count RllLexCodec::weight_of_first(Count first) const {
    if (first > count_at(params_.internal_T, 0))
        throw std::out_of_range("prefix size exceeds the family size");
    Count total = 0;
    unsigned len = params_.internal_T;
    unsigned fz = 0;
    Count prefix_weight = 0;
    while (first > 0) {
        if (len == 0) {  // exactly one word remains in this subtree
            total += prefix_weight;
            break;
        }
        const unsigned down = fz > 0 ? fz - 1 : 0;
        const Count& zero_branch = count_at(len - 1, down);
        if (first <= zero_branch) {
            fz = down;
        } else {
            total += weight_sum_at(len - 1, down) + prefix_weight * zero_branch;
            first -= zero_branch;
            ++prefix_weight;
            fz = params_.order_i;
        }
        --len;
    }
    return total;
}

Count RllLexCodec::codebook_weight() const {
    const Count hi = Count(params_.shift) + params_.message_count();
    return weight_of_first(hi) - weight_of_first(Count(params_.shift));
}

namespace {

// Emits the internal family in its recursive generation order: the 0-branch
// first, then a 1 followed by the forced zeros. That order is lexicographic.
void generate_family(unsigned order, std::vector<std::uint8_t>& prefix, std::size_t remaining,
                     std::vector<std::vector<std::uint8_t>>& out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    prefix.push_back(0);
    generate_family(order, prefix, remaining - 1, out);
    prefix.back() = 1;
    const std::size_t forced = std::min<std::size_t>(order, remaining - 1);
    prefix.insert(prefix.end(), forced, 0);
    generate_family(order, prefix, remaining - 1 - forced, out);
    prefix.resize(prefix.size() - forced - 1);
}

}  // namespace

Codebook Codebook::materialize(const CodeParams& params, Ordering ordering,
                               unsigned max_info_bits) {
    if (params.info_bits_k > max_info_bits)
        throw std::length_error("refusing to materialize 2^" +
                                std::to_string(params.info_bits_k) +
                                " codewords (limit is 2^" + std::to_string(max_info_bits) + ")");
    // The generation pass walks the whole family, so an oversized explicit
    // length is refused even when 2^k itself is small.
    if (family_size(params.order_i, params.internal_T) > (Count(1) << (max_info_bits + 2)))
        throw std::length_error("family too large to materialize");

    std::vector<std::vector<std::uint8_t>> family;
    std::vector<std::uint8_t> prefix;
    prefix.reserve(params.internal_T);
    generate_family(params.order_i, prefix, params.internal_T, family);

    std::vector<std::size_t> positions(family.size());
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    if (ordering == Ordering::WeightThenLex) {
        std::vector<std::size_t> weights(family.size());
        for (std::size_t w = 0; w < family.size(); ++w)
            for (std::uint8_t bit : family[w]) weights[w] += bit;
        // Stable sort keeps the lexicographic generation order within a weight.
        std::stable_sort(positions.begin(), positions.end(),
                         [&](std::size_t a, std::size_t b) { return weights[a] < weights[b]; });
    }

    Codebook book;
    book.words_ = static_cast<std::size_t>(1) << params.info_bits_k;
    book.length_ = params.length_n;
    book.stride_ = (params.length_n + 7) / 8;
    if (family.size() < book.words_ + params.shift)
        throw std::logic_error("family smaller than the selected codebook");
    book.blob_.reserve(book.words_ * book.stride_);
    for (std::size_t m = 0; m < book.words_; ++m) {
        std::vector<std::uint8_t> bits(params.order_i, 0);  // the forced prefix
        const std::vector<std::uint8_t>& internal = family[positions[m + params.shift]];
        bits.insert(bits.end(), internal.begin(), internal.end());
        const std::vector<std::uint8_t> packed = BitWord(std::move(bits)).packed();
        book.blob_.insert(book.blob_.end(), packed.begin(), packed.end());
    }
    return book;
}

BitWord Codebook::word(std::size_t index) const {
    if (index >= words_) throw std::out_of_range("codebook index out of range");
    return BitWord::unpack(blob_.data() + index * stride_, length_);
}

}  // namespace rlim
