#include <stdexcept>

#include "doctest.h"
#include "rlim/bigint.hpp"

using namespace rlim;

TEST_CASE("bit lengths and stored widths") {
    CHECK(bit_length(Count(0)) == 0);
    CHECK(bit_length(Count(1)) == 1);
    CHECK(bit_length(Count(2)) == 2);
    CHECK(bit_length(Count(255)) == 8);
    CHECK(bit_length(Count(256)) == 9);
    CHECK(bit_length(Count(1) << 100) == 101);

    // A stored zero still occupies one bit in the footprint metric.
    CHECK(stored_bits(Count(0)) == 1);
    CHECK(stored_bits(Count(1)) == 1);
    CHECK(stored_bits(Count(6)) == 3);
}

TEST_CASE("decimal parsing is exact") {
    CHECK(parse_decimal("500") == Rational(500));
    CHECK(parse_decimal("0.2") == Rational(1, 5));
    CHECK(parse_decimal("-1.5") == Rational(-3, 2));
    CHECK(parse_decimal(".25") == Rational(1, 4));
    CHECK(parse_decimal("2.") == Rational(2));
    CHECK(parse_decimal("+0.125") == Rational(1, 8));
    CHECK_THROWS_AS(parse_decimal("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal("."), std::invalid_argument);
    CHECK_THROWS_AS(parse_decimal("1.2.3"), std::invalid_argument);
}

TEST_CASE("round half to even") {
    CHECK(round_half_even(Rational(1, 2)) == 0);
    CHECK(round_half_even(Rational(3, 2)) == 2);
    CHECK(round_half_even(Rational(5, 2)) == 2);
    CHECK(round_half_even(Rational(7, 2)) == 4);
    CHECK(round_half_even(Rational(-1, 2)) == 0);
    CHECK(round_half_even(Rational(-3, 2)) == -2);
    CHECK(round_half_even(Rational(7, 3)) == 2);
    CHECK(round_half_even(Rational(8, 3)) == 3);
    CHECK(round_half_even(Rational(4)) == 4);

    // Burst normalization cases: 500 * 16 * 2^15 over the two k=16 codebook
    // weights used in the benchmark experiments.
    CHECK(round_half_even(Rational(Count(262144000), Count(329718))) == 795);
    CHECK(round_half_even(Rational(Count(262144000), Count(343276))) == 764);
}
