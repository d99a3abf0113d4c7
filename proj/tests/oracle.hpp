#pragma once

// Brute-force reference constructions for the unit and acceptance tests.
// Everything here enumerates or scans exhaustively, independent of the
// library's counting tables and codecs.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Run constraint on the internal alphabet: consecutive 1-bits are at least
// order+1 positions apart.
inline bool gap_rule(const std::string& word, unsigned order) {
    std::size_t last_one = std::string::npos;
    for (std::size_t p = 0; p < word.size(); ++p) {
        if (word[p] != '1') continue;
        if (last_one != std::string::npos && p - last_one <= order) return false;
        last_one = p;
    }
    return true;
}

// Codeword-level constraint: the gap rule plus mandatory zeros in the first
// min(order, length) positions.
inline bool padded_admissible(const std::string& word, unsigned order) {
    for (std::size_t p = 0; p < word.size() && p < order; ++p)
        if (word[p] == '1') return false;
    return gap_rule(word, order);
}

inline unsigned weight(const std::string& word) {
    return static_cast<unsigned>(std::count(word.begin(), word.end(), '1'));
}

inline std::string bits_of(std::uint64_t mask, unsigned length) {
    std::string w(length, '0');
    for (unsigned b = 0; b < length; ++b)
        if (mask >> (length - 1 - b) & 1) w[b] = '1';  // MSB first: numeric order is lex order
    return w;
}

// All internal words of the given length satisfying the gap rule, in
// lexicographic order.
inline std::vector<std::string> family(unsigned order, unsigned length) {
    if (length > 26) throw std::length_error("oracle family length too large");
    std::vector<std::string> words;
    for (std::uint64_t mask = 0; mask < (1ull << length); ++mask) {
        std::string w = bits_of(mask, length);
        if (gap_rule(w, order)) words.push_back(std::move(w));
    }
    return words;
}

// The family reordered by (weight, lex). The input is lexicographic and the
// sort is stable, so ties keep lex order.
inline std::vector<std::string> weight_then_lex(unsigned order, unsigned length) {
    std::vector<std::string> words = family(order, length);
    std::stable_sort(words.begin(), words.end(), [](const std::string& a, const std::string& b) {
        return weight(a) < weight(b);
    });
    return words;
}

inline std::vector<std::string> pad(std::vector<std::string> words, unsigned order) {
    const std::string zeros(order, '0');
    for (std::string& w : words) w.insert(0, zeros);
    return words;
}

// The selected codebook: 2^info_bits words starting at rank `delta` in the
// requested order, with the order padding prepended.
inline std::vector<std::string> codebook(unsigned order, unsigned info_bits, unsigned delta,
                                         unsigned internal_len, bool weight_first) {
    std::vector<std::string> all =
        weight_first ? weight_then_lex(order, internal_len) : family(order, internal_len);
    const std::size_t want = (std::size_t{1} << info_bits) + delta;
    if (all.size() < want) throw std::length_error("oracle family too small for the codebook");
    all.resize(want);
    all.erase(all.begin(), all.begin() + delta);
    return pad(std::move(all), order);
}

// All codeword-compatible words of a full codeword length, the candidate set
// for nearest-word correction.
inline std::vector<std::string> padded_words(unsigned order, unsigned length) {
    if (length > 26) throw std::length_error("oracle word length too large");
    std::vector<std::string> words;
    for (std::uint64_t mask = 0; mask < (1ull << length); ++mask) {
        std::string w = bits_of(mask, length);
        if (padded_admissible(w, order)) words.push_back(std::move(w));
    }
    return words;
}

inline unsigned hamming(const std::string& a, const std::string& b) {
    unsigned d = 0;
    for (std::size_t p = 0; p < a.size(); ++p) d += a[p] != b[p];
    return d;
}

inline unsigned min_distance(const std::string& word, const std::vector<std::string>& candidates) {
    unsigned best = static_cast<unsigned>(word.size()) + 1;
    for (const std::string& c : candidates) best = std::min(best, hamming(word, c));
    return best;
}

}  // namespace oracle
