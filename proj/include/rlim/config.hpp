#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "rlim/bigint.hpp"

namespace rlim {

// Flat `key = value` file: one pair per line, '#' starts a comment, blank
// lines are ignored. Keys are unique; lookups are by exact name.
class KeyValueConfig {
public:
    static KeyValueConfig parse_string(std::string_view text);
    static KeyValueConfig parse_file(const std::string& path);

    bool has(std::string_view key) const;
    const std::vector<std::string>& keys() const { return order_; }

    // Raw value text; throws std::out_of_range when the key is absent.
    const std::string& raw(std::string_view key) const;

    std::string get_string(std::string_view key) const;
    std::string get_string(std::string_view key, std::string_view fallback) const;

    std::int64_t get_int(std::string_view key) const;
    std::int64_t get_int(std::string_view key, std::int64_t fallback) const;

    std::uint64_t get_uint(std::string_view key) const;
    std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;

    double get_double(std::string_view key) const;
    double get_double(std::string_view key, double fallback) const;

    // Exact decimal value, no binary rounding.
    Rational get_rational(std::string_view key) const;

    bool get_bool(std::string_view key) const;
    bool get_bool(std::string_view key, bool fallback) const;

    // Comma-separated items, individually trimmed; empty items are errors.
    std::vector<std::string> get_list(std::string_view key) const;

    // Rejects any key outside `allowed`, naming the first offender.
    void require_known(std::initializer_list<std::string_view> allowed) const;

private:
    struct Entry {
        std::string key;
        std::string value;
    };
    const Entry* find(std::string_view key) const;

    std::vector<Entry> entries_;
    std::vector<std::string> order_;
};

}  // namespace rlim
