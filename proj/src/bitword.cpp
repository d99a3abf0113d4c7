#include "rlim/bitword.hpp"

#include <algorithm>
#include <stdexcept>

namespace rlim {

BitWord BitWord::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0')
            bits.push_back(0);
        else if (c == '1')
            bits.push_back(1);
        else
            throw std::invalid_argument(std::string("bit-string contains '") + c + "'");
    }
    return BitWord(std::move(bits));
}

std::size_t BitWord::weight() const {
    std::size_t w = 0;
    for (std::uint8_t b : bits_) w += b;
    return w;
}

std::size_t BitWord::rightmost_one() const {
    for (std::size_t pos = bits_.size(); pos-- > 0;)
        if (bits_[pos]) return pos;
    return npos;
}

std::size_t BitWord::first_violation(unsigned order) const {
    std::size_t last_one = npos;
    for (std::size_t pos = 0; pos < bits_.size(); ++pos) {
        if (!bits_[pos]) continue;
        if (pos < order) return pos;  // leading zeros are mandatory
        if (last_one != npos && pos - last_one - 1 < order) return pos;
        last_one = pos;
    }
    return npos;
}

std::string BitWord::str() const {
    std::string out(bits_.size(), '0');
    for (std::size_t pos = 0; pos < bits_.size(); ++pos)
        if (bits_[pos]) out[pos] = '1';
    return out;
}

std::vector<std::uint8_t> BitWord::packed() const {
    std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
    for (std::size_t pos = 0; pos < bits_.size(); ++pos)
        if (bits_[pos]) out[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
    return out;
}

BitWord BitWord::unpack(const std::uint8_t* bytes, std::size_t length_bits) {
    BitWord word(length_bits);
    for (std::size_t pos = 0; pos < length_bits; ++pos)
        word.set(pos, (bytes[pos / 8] >> (7 - pos % 8)) & 1u);
    return word;
}

std::size_t hamming_distance(const BitWord& a, const BitWord& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t pos = 0; pos < a.size(); ++pos) d += a[pos] != b[pos];
    return d;
}

bool lex_less(const BitWord& a, const BitWord& b) {
    return std::lexicographical_compare(a.bits().begin(), a.bits().end(), b.bits().begin(),
                                        b.bits().end());
}

bool weight_lex_less(const BitWord& a, const BitWord& b) {
    std::size_t wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    return lex_less(a, b);
}

}  // namespace rlim
