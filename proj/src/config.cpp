#include "rlim/config.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlim {
namespace {

std::string_view trimmed(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
    throw std::runtime_error("config key '" + std::string(key) + "': cannot read '" +
                             std::string(value) + "' as " + std::string(want));
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
    Int value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) bad_value(key, text, "an integer");
    return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_string(std::string_view text) {
    KeyValueConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                              : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trimmed(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string_view key = trimmed(line.substr(0, eq));
        const std::string_view value = trimmed(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        if (cfg.find(key) != nullptr)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": duplicate key '" + std::string(key) + "'");
        cfg.entries_.push_back({std::string(key), std::string(value)});
        cfg.order_.emplace_back(key);
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

const KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) const {
    for (const Entry& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

bool KeyValueConfig::has(std::string_view key) const { return find(key) != nullptr; }

const std::string& KeyValueConfig::raw(std::string_view key) const {
    const Entry* e = find(key);
    if (e == nullptr) throw std::out_of_range("config key '" + std::string(key) + "' is missing");
    return e->value;
}

std::string KeyValueConfig::get_string(std::string_view key) const { return raw(key); }

std::string KeyValueConfig::get_string(std::string_view key, std::string_view fallback) const {
    const Entry* e = find(key);
    return e != nullptr ? e->value : std::string(fallback);
}

std::int64_t KeyValueConfig::get_int(std::string_view key) const {
    return parse_integer<std::int64_t>(key, raw(key));
}

std::int64_t KeyValueConfig::get_int(std::string_view key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint(std::string_view key) const {
    return parse_integer<std::uint64_t>(key, raw(key));
}

std::uint64_t KeyValueConfig::get_uint(std::string_view key, std::uint64_t fallback) const {
    return has(key) ? get_uint(key) : fallback;
}

double KeyValueConfig::get_double(std::string_view key) const {
    const std::string& text = raw(key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0') bad_value(key, text, "a number");
    return v;
}

double KeyValueConfig::get_double(std::string_view key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

Rational KeyValueConfig::get_rational(std::string_view key) const {
    const std::string& text = raw(key);
    try {
        return parse_decimal(text);
    } catch (const std::exception&) {
        bad_value(key, text, "a decimal number");
    }
}

bool KeyValueConfig::get_bool(std::string_view key) const {
    const std::string& text = raw(key);
    if (text == "true" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "no" || text == "0") return false;
    bad_value(key, text, "a boolean");
}

bool KeyValueConfig::get_bool(std::string_view key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<std::string> KeyValueConfig::get_list(std::string_view key) const {
    const std::string& text = raw(key);
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string_view item =
            trimmed(std::string_view(text).substr(start, comma == std::string::npos
                                                             ? text.size() - start
                                                             : comma - start));
        if (item.empty()) bad_value(key, text, "a comma-separated list");
        items.emplace_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return items;
}

void KeyValueConfig::require_known(std::initializer_list<std::string_view> allowed) const {
    for (const Entry& e : entries_) {
        bool known = false;
        for (std::string_view a : allowed)
            if (e.key == a) {
                known = true;
                break;
            }
        if (!known) throw std::runtime_error("config key '" + e.key + "' is not recognized");
    }
}

}  // namespace rlim
