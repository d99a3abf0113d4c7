#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"
#include "rlim/bitword.hpp"

using namespace rlim;

TEST_CASE("construction and string round trips") {
    BitWord w = BitWord::from_string("0101");
    CHECK(w.size() == 4);
    CHECK(w.str() == "0101");
    CHECK(w.weight() == 2);
    CHECK_FALSE(w.all_zero());
    CHECK(w[0] == 0);
    CHECK(w[1] == 1);
    CHECK(w.rightmost_one() == 3);
    w.set(3, 0);
    CHECK(w.str() == "0100");
    CHECK(w.rightmost_one() == 1);

    CHECK(BitWord(3).str() == "000");
    CHECK(BitWord(3).all_zero());
    CHECK(BitWord(3).rightmost_one() == BitWord::npos);
    CHECK(BitWord().empty());
    CHECK_THROWS_AS(BitWord::from_string("01a1"), std::invalid_argument);
}

TEST_CASE("packing round trips") {
    BitWord w = BitWord::from_string("101001101");
    std::vector<std::uint8_t> packed = w.packed();
    REQUIRE(packed.size() == 2);
    CHECK(packed[0] == 0xA6);  // 10100110
    CHECK(packed[1] == 0x80);  // 1 then zero fill
    CHECK(BitWord::unpack(packed.data(), 9) == w);
}

TEST_CASE("admissibility matches the brute-force rule") {
    for (unsigned order = 1; order <= 3; ++order)
        for (unsigned len = 1; len <= 8; ++len)
            for (std::uint64_t mask = 0; mask < (1ull << len); ++mask) {
                const std::string text = oracle::bits_of(mask, len);
                CAPTURE(order);
                CAPTURE(text);
                CHECK(BitWord::from_string(text).admissible(order) ==
                      oracle::padded_admissible(text, order));
            }
}

TEST_CASE("first violation positions") {
    CHECK(BitWord::from_string("0101").first_violation(1) == BitWord::npos);
    CHECK(BitWord::from_string("0110").first_violation(1) == 2);
    CHECK(BitWord::from_string("1010").first_violation(1) == 0);  // padding zone
    CHECK(BitWord::from_string("00100100").first_violation(2) == BitWord::npos);
    CHECK(BitWord::from_string("0010100").first_violation(2) == 4);
}

TEST_CASE("orderings and distance") {
    BitWord a = BitWord::from_string("0011");
    BitWord b = BitWord::from_string("0100");
    CHECK(lex_less(a, b));
    CHECK_FALSE(lex_less(b, a));
    CHECK_FALSE(lex_less(a, a));
    CHECK(weight_lex_less(b, a));  // lighter word first
    CHECK(hamming_distance(a, b) == 3);
    CHECK_THROWS_AS(hamming_distance(a, BitWord(3)), std::invalid_argument);
}
