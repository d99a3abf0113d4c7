#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rlim {

// Fixed-length binary word. Bit 0 is the leftmost (most significant) bit,
// matching the usual left-to-right word notation.
class BitWord {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitWord() = default;
    explicit BitWord(std::size_t length) : bits_(length, 0) {}
    explicit BitWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    // Parses an ASCII bit-string such as "0100". Throws on other characters.
    static BitWord from_string(std::string_view text);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t pos) const { return bits_[pos]; }
    void set(std::size_t pos, std::uint8_t value) { bits_[pos] = value ? 1 : 0; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    std::size_t weight() const;
    bool all_zero() const { return weight() == 0; }

    // Position of the rightmost 1-bit, or npos if the word is all zero.
    std::size_t rightmost_one() const;

    // First position violating the external admissibility constraint for the
    // given order (leading zeros plus minimum run-length between 1-bits), or
    // npos if the word is admissible.
    std::size_t first_violation(unsigned order) const;
    bool admissible(unsigned order) const { return first_violation(order) == npos; }

    std::string str() const;

    // Packs MSB-first into bytes, zero-padded in the last byte.
    std::vector<std::uint8_t> packed() const;
    static BitWord unpack(const std::uint8_t* bytes, std::size_t length_bits);

    bool operator==(const BitWord& other) const { return bits_ == other.bits_; }
    bool operator!=(const BitWord& other) const { return bits_ != other.bits_; }

private:
    std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitWord& a, const BitWord& b);

// Lexicographic order with 0 < 1, leftmost bit most significant.
bool lex_less(const BitWord& a, const BitWord& b);

// Hamming weight first, then lexicographic.
bool weight_lex_less(const BitWord& a, const BitWord& b);

}  // namespace rlim
