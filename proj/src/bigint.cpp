#include "rlim/bigint.hpp"

#include <stdexcept>

namespace rlim {

std::size_t bit_length(const Count& v) {
    if (v == 0) return 0;
    return static_cast<std::size_t>(boost::multiprecision::msb(v)) + 1;
}

std::size_t stored_bits(const Count& v) {
    std::size_t n = bit_length(v);
    return n == 0 ? 1 : n;
}

Rational parse_decimal(const std::string& text) {
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad decimal literal: " + text);
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else {
            throw std::invalid_argument("bad decimal literal: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad decimal literal: " + text);
    // Leading zeros would make the string constructor read the digits as
    // octal.
    const std::size_t first_nz = digits.find_first_not_of('0');
    Count num(first_nz == std::string::npos ? "0" : digits.substr(first_nz));
    Count den = 1;
    for (std::size_t j = 0; j < frac_digits; ++j) den *= 10;
    if (negative) num = -num;
    return Rational(num, den);
}

Count round_half_even(const Rational& x) {
    Count num = boost::multiprecision::numerator(x);
    Count den = boost::multiprecision::denominator(x);  // den > 0
    Count q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r < 0) {  // make the remainder non-negative (floor division)
        q -= 1;
        r += den;
    }
    Count twice = r * 2;
    if (twice > den || (twice == den && (q & 1) != 0)) q += 1;
    return q;
}

}  // namespace rlim
