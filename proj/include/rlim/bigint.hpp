#pragma once

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rlim {

// Exact integer counts and ranks. Table entries exceed 64 bits well before
// the dimensions the encoder is meant to reach, so everything that counts
// codewords is arbitrary precision.
using Count = boost::multiprecision::cpp_int;

// Exact rational quantities (normalized signal intervals, rounding inputs).
using Rational = boost::multiprecision::cpp_rational;

// Number of bits in the binary representation of v >= 0; 0 for v == 0.
std::size_t bit_length(const Count& v);

// Storage cost of one table entry in bits: a stored integer occupies at
// least one bit, so stored_bits(0) == 1.
std::size_t stored_bits(const Count& v);

// Parses a plain decimal literal ("500", "0.25", "-1.5") into an exact
// rational. Rejects exponents and anything else.
Rational parse_decimal(const std::string& text);

// Nearest integer with ties to even.
Count round_half_even(const Rational& x);

}  // namespace rlim
