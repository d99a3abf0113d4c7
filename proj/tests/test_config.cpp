#include <stdexcept>

#include "doctest.h"
#include "rlim/config.hpp"

using namespace rlim;

TEST_CASE("parses pairs, comments and blank lines") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "# channel\n"
        "D = 79.4\n"
        "\n"
        "M= 500   # molecules per burst\n"
        "label =  desk run \n");
    CHECK(cfg.has("D"));
    CHECK(cfg.get_double("D") == doctest::Approx(79.4));
    CHECK(cfg.get_uint("M") == 500);
    CHECK(cfg.get_string("label") == "desk run");
    CHECK(cfg.keys().size() == 3);
    CHECK_FALSE(cfg.has("ts"));
    CHECK(cfg.get_double("ts", 0.25) == doctest::Approx(0.25));
    CHECK_THROWS_AS(cfg.raw("ts"), std::out_of_range);
}

TEST_CASE("rejects malformed lines") {
    CHECK_THROWS_WITH_AS(KeyValueConfig::parse_string("a = 1\nb 2\n"),
                         doctest::Contains("line 2"), std::runtime_error);
    CHECK_THROWS_WITH_AS(KeyValueConfig::parse_string("a = 1\na = 2\n"),
                         doctest::Contains("duplicate"), std::runtime_error);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("= 3\n"), std::runtime_error);
}

TEST_CASE("typed getters are strict") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string(
        "n = 12\nneg = -3\nbad = 12x\nratio = 0.2\nflag = true\noff = 0\n"
        "seeds = 1, 2, 3\nempty_item = 1,,3\n");
    CHECK(cfg.get_int("neg") == -3);
    CHECK(cfg.get_uint("n") == 12);
    CHECK_THROWS_AS(cfg.get_uint("bad"), std::runtime_error);
    CHECK_THROWS_AS(cfg.get_uint("neg"), std::runtime_error);
    CHECK(cfg.get_rational("ratio") == Rational(1, 5));
    CHECK(cfg.get_bool("flag"));
    CHECK_FALSE(cfg.get_bool("off"));
    CHECK(cfg.get_list("seeds") == std::vector<std::string>{"1", "2", "3"});
    CHECK_THROWS_AS(cfg.get_list("empty_item"), std::runtime_error);
}

TEST_CASE("unknown keys are named") {
    const KeyValueConfig cfg = KeyValueConfig::parse_string("D = 1\nbogus = 2\n");
    CHECK_THROWS_WITH_AS(cfg.require_known({"D", "M"}), doctest::Contains("bogus"),
                         std::runtime_error);
    CHECK_NOTHROW(cfg.require_known({"D", "bogus"}));
}
