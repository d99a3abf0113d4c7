#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracle.hpp"
#include "rlim/enumeration.hpp"

using namespace rlim;

TEST_CASE("family sizes follow the shifted recurrence") {
    // Order 1 gives the Fibonacci-like ramp 1, 2, 3, 5, 8, ...
    const unsigned fib[] = {1, 2, 3, 5, 8, 13, 21};
    for (unsigned t = 0; t < 7; ++t) CHECK(family_size(1, t) == fib[t]);
    CHECK(family_size(1, 4) == 8);

    // Two spot checks far past the seed region.
    CHECK(family_size(3, 33) == 59864);
    CHECK(family_size(3, 34) == 82629);

    // Dual route: the closed recurrence against brute-force enumeration.
    for (unsigned order = 1; order <= 5; ++order)
        for (unsigned t = 0; t <= 18; ++t) {
            CAPTURE(order);
            CAPTURE(t);
            CHECK(family_size(order, t) == oracle::family(order, t).size());
        }
}

TEST_CASE("mode parsing") {
    CHECK(mode_from_string("E") == Mode::Enhanced);
    CHECK(mode_from_string("N") == Mode::NonEnhanced);
    CHECK(mode_char(Mode::Enhanced) == 'E');
    CHECK(mode_char(Mode::NonEnhanced) == 'N');
    CHECK(shift_delta(Mode::Enhanced) == 0);
    CHECK(shift_delta(Mode::NonEnhanced) == 1);
    CHECK_THROWS_AS(mode_from_string("q"), std::invalid_argument);
}

TEST_CASE("shortest lengths") {
    CHECK(shortest_length(1, 2, Mode::Enhanced) == 4);
    CHECK(shortest_length(1, 2, Mode::NonEnhanced) == 4);  // |C_1(3)| = 5 hosts 4+1 words
    CHECK(shortest_length(3, 16, Mode::Enhanced) == 37);
    CHECK(shortest_length(3, 16, Mode::NonEnhanced) == 37);
    CHECK(shortest_length(3, 40, Mode::Enhanced) == 88);

    // The resolved parameters expose the same split.
    const CodeParams p = CodeParams::resolve(3, 16, Mode::Enhanced);
    CHECK(p.length_n == 37);
    CHECK(p.internal_T == 34);
    CHECK(p.shift == 0);
    CHECK(p.message_count() == 65536);
    CHECK(CodeParams::resolve(3, 16, Mode::NonEnhanced).shift == 1);

    // An explicit length must still fit the codebook; |C_1(3)| = 5 hosts
    // 4 words plus the dropped all-zero word, but never 8.
    CHECK(CodeParams::with_length(1, 2, Mode::Enhanced, 4).internal_T == 3);
    CHECK(CodeParams::with_length(1, 2, Mode::NonEnhanced, 4).shift == 1);
    CHECK_THROWS_AS(CodeParams::with_length(1, 3, Mode::Enhanced, 4), std::invalid_argument);
}

TEST_CASE("counting table entries and layers") {
    const CountingTables t13 = CountingTables::build(1, 3);
    CHECK(t13.max_weight() == 2);
    CHECK(t13.entry(3, 2, 0) == 1);
    CHECK(t13.entry(2, 1, 0) == 2);
    CHECK(t13.layer_size(0) == 1);
    CHECK(t13.layer_size(1) == 3);
    CHECK(t13.layer_size(2) == 1);
    CHECK(t13.layer_offset(0) == 0);
    CHECK(t13.layer_offset(1) == 1);
    CHECK(t13.layer_offset(2) == 4);
    CHECK(t13.layer_offset(3) == 5);
    CHECK(t13.family_total() == 5);

    const CountingTables t25 = CountingTables::build(2, 5);
    CHECK(t25.max_weight() == 2);
    CHECK(t25.layer_size(0) == 1);
    CHECK(t25.layer_size(1) == 5);
    CHECK(t25.layer_size(2) == 3);
    CHECK(t25.family_total() == 9);
}

TEST_CASE("layer totals add up to the family size") {
    for (unsigned order = 1; order <= 5; ++order)
        for (unsigned len = 1; len <= 18; ++len) {
            const CountingTables tables = CountingTables::build(order, len);
            Count total = 0;
            for (unsigned w = 0; w <= tables.max_weight(); ++w) total += tables.layer_size(w);
            CAPTURE(order);
            CAPTURE(len);
            CHECK(total == family_size(order, len));
            CHECK(tables.family_total() == total);
        }
}

TEST_CASE("layer lookup") {
    const CountingTables tables = CountingTables::build(1, 3);
    LayerLocation at2 = locate_layer(tables, Count(2));
    CHECK(at2.weight == 1);
    CHECK(at2.within_rank == 1);
    LayerLocation at4 = locate_layer(tables, Count(4));
    CHECK(at4.weight == 2);
    CHECK(at4.within_rank == 0);
    CHECK_THROWS_AS(locate_layer(tables, Count(5)), std::out_of_range);
}

TEST_CASE("prefix state transitions") {
    PrefixState s = PrefixState::initial(5, 2);
    CHECK(s.consume(2, 1));  // 1 consumed: order zeros now forced
    CHECK(s.remaining_len == 4);
    CHECK(s.remaining_weight == 1);
    CHECK(s.forced_zeros == 2);
    CHECK(s.consume(2, 0));
    CHECK(s.forced_zeros == 1);
    CHECK_FALSE(PrefixState{s}.consume(2, 1));  // a 1 inside the forced zone
    CHECK(s.consume(2, 0));
    CHECK(s.consume(2, 1));
    CHECK(s.remaining_len == 1);
    CHECK(s.remaining_weight == 0);
    CHECK_FALSE(PrefixState{s}.consume(2, 1));  // no weight left
}

TEST_CASE("table container round trip") {
    const CountingTables tables = CountingTables::build(3, 34);
    std::ostringstream sink;
    tables.save(sink);
    std::istringstream source(sink.str());
    const CountingTables loaded = CountingTables::load(source);
    CHECK(loaded.order() == 3);
    CHECK(loaded.internal_len() == 34);
    CHECK(loaded.max_weight() == tables.max_weight());
    CHECK(loaded.family_total() == tables.family_total());
    CHECK(loaded.stored_bit_count() == tables.stored_bit_count());
    for (unsigned len = 0; len <= 34; ++len)
        for (unsigned w = 0; w <= 34; ++w)
            for (unsigned fz = 0; fz <= 3; ++fz)
                REQUIRE(loaded.entry(len, w, fz) == tables.entry(len, w, fz));

    std::string bytes = sink.str();
    bytes[0] ^= 0x40;  // corrupt the magic
    std::istringstream bad(bytes);
    CHECK_THROWS_AS(CountingTables::load(bad), std::runtime_error);
}

TEST_CASE("stored footprint of the production tables") {
    CHECK(CountingTables::build(3, 34).stored_bit_count() == 8909);  // i=3, k=16
    CHECK(CountingTables::build(3, 17).stored_bit_count() == 1821);  // i=3, k=8
}
