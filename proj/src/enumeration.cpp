#include "rlim/enumeration.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rlim {
namespace {

std::string lowered(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void check_order(unsigned order) {
    if (order == 0) throw std::invalid_argument("code order must be at least 1");
}

}  // namespace

Mode mode_from_string(std::string_view text) {
    const std::string t = lowered(text);
    if (t == "e" || t == "enhanced") return Mode::Enhanced;
    if (t == "n" || t == "nonenhanced" || t == "non-enhanced") return Mode::NonEnhanced;
    throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected E or N)");
}

char mode_char(Mode mode) { return mode == Mode::Enhanced ? 'E' : 'N'; }

Count family_size(unsigned order, unsigned length) {
    check_order(order);
    if (length == 0) return 1;
    if (length <= order + 1) return Count(length) + 1;
    // c(t) = c(t-1) + c(t-order-1); the ring holds the last order+1 values,
    // slot t % (order+1) is read as c(t-order-1) just before it is
    // overwritten with c(t).
    const unsigned span = order + 1;
    std::vector<Count> ring(span);
    for (unsigned t = 0; t <= order + 1; ++t) ring[t % span] = Count(t) + 1;
    Count prev = ring[(order + 1) % span];
    for (unsigned t = order + 2; t <= length; ++t) {
        Count next = prev + ring[t % span];
        ring[t % span] = next;
        prev = std::move(next);
    }
    return prev;
}

unsigned shortest_length(unsigned order, unsigned info_bits, Mode mode) {
    check_order(order);
    if (info_bits == 0) throw std::invalid_argument("info bits must be at least 1");
    const Count target = (Count(1) << info_bits) + shift_delta(mode);
    const unsigned span = order + 1;
    std::vector<Count> ring(span);
    Count prev;
    for (unsigned t = 1;; ++t) {
        Count current;
        if (t <= order + 1) {
            current = Count(t) + 1;
        } else {
            current = prev + ring[t % span];
        }
        ring[t % span] = current;
        if (current >= target) return order + t;
        prev = std::move(current);
        if (t > (1u << 20))
            throw std::runtime_error("shortest_length search exceeded its bound");
    }
}

CodeParams CodeParams::resolve(unsigned order, unsigned info_bits, Mode mode) {
    const unsigned n = shortest_length(order, info_bits, mode);
    CodeParams p;
    p.order_i = order;
    p.info_bits_k = info_bits;
    p.mode = mode;
    p.length_n = n;
    p.internal_T = n - order;
    p.shift = shift_delta(mode);
    return p;
}

CodeParams CodeParams::with_length(unsigned order, unsigned info_bits, Mode mode, unsigned length) {
    check_order(order);
    if (info_bits == 0) throw std::invalid_argument("info bits must be at least 1");
    if (length < order + 1)
        throw std::invalid_argument("codeword length must be at least order+1");
    const Count needed = (Count(1) << info_bits) + shift_delta(mode);
    if (family_size(order, length - order) < needed)
        throw std::invalid_argument("codeword length " + std::to_string(length) +
                                    " is too short for " + std::to_string(info_bits) +
                                    " info bits");
    CodeParams p;
    p.order_i = order;
    p.info_bits_k = info_bits;
    p.mode = mode;
    p.length_n = length;
    p.internal_T = length - order;
    p.shift = shift_delta(mode);
    return p;
}

Count CodeParams::message_count() const { return Count(1) << info_bits_k; }

bool PrefixState::consume(unsigned order, std::uint8_t bit) {
    if (remaining_len == 0) return false;
    --remaining_len;
    if (bit) {
        if (forced_zeros > 0 || remaining_weight == 0) return false;
        --remaining_weight;
        ++consumed_weight;
        trailing_zeros = 0;
        forced_zeros = order;
    } else {
        ++trailing_zeros;
        if (forced_zeros > 0) --forced_zeros;
    }
    return true;
}

CountingTables CountingTables::build(unsigned order, unsigned internal_len) {
    check_order(order);
    CountingTables t;
    t.order_ = order;
    t.internal_len_ = internal_len;

    const std::size_t wdim = internal_len + 1;
    const std::size_t rdim = order + 1;
    t.entries_.assign((internal_len + 1) * wdim * rdim, Count(0));
    auto at = [&](unsigned len, unsigned w, unsigned fz) -> Count& {
        return t.entries_[(static_cast<std::size_t>(len) * wdim + w) * rdim + fz];
    };

    // Empty suffix: only weight 0 is realizable, regardless of pending zeros.
    for (unsigned fz = 0; fz <= order; ++fz) at(0, 0, fz) = 1;
    for (unsigned len = 1; len <= internal_len; ++len) {
        for (unsigned w = 0; w <= internal_len; ++w) {
            // A forced leading zero only shortens the suffix.
            for (unsigned fz = 1; fz <= order; ++fz) at(len, w, fz) = at(len - 1, w, fz - 1);
            // Free first bit: zero keeps the state, one forces `order` zeros.
            Count v = at(len - 1, w, 0);
            if (w >= 1) v += at(len - 1, w - 1, order);
            at(len, w, 0) = std::move(v);
        }
    }

    t.max_weight_ = (internal_len + order) / (order + 1);  // ceil(T / (order+1))
    t.layer_sizes_.reserve(t.max_weight_ + 1);
    t.layer_offsets_.reserve(t.max_weight_ + 2);
    t.layer_offsets_.push_back(Count(0));
    for (unsigned w = 0; w <= t.max_weight_; ++w) {
        t.layer_sizes_.push_back(at(internal_len, w, 0));
        t.layer_offsets_.push_back(t.layer_offsets_.back() + t.layer_sizes_.back());
    }
    return t;
}

const Count& CountingTables::layer_size(unsigned w) const {
    if (w >= layer_sizes_.size()) throw std::out_of_range("weight layer out of range");
    return layer_sizes_[w];
}

const Count& CountingTables::layer_offset(unsigned w) const {
    if (w >= layer_offsets_.size()) throw std::out_of_range("weight layer out of range");
    return layer_offsets_[w];
}

std::size_t CountingTables::stored_bit_count() const {
    std::size_t total = 0;
    for (const Count& v : entries_) total += stored_bits(v);
    for (const Count& v : layer_sizes_) total += stored_bits(v);
    for (const Count& v : layer_offsets_) total += stored_bits(v);
    return total;
}

namespace {

constexpr char kTableMagic[4] = {'R', 'T', 'B', 'L'};
constexpr std::uint32_t kTableVersion = 1;

void write_u32be(std::ostream& out, std::uint32_t v) {
    const unsigned char bytes[4] = {
        static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
        static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t read_u32be(std::istream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (!in) throw std::runtime_error("counting table stream truncated");
    return (std::uint32_t(bytes[0]) << 24) | (std::uint32_t(bytes[1]) << 16) |
           (std::uint32_t(bytes[2]) << 8) | std::uint32_t(bytes[3]);
}

void write_count(std::ostream& out, const Count& v) {
    if (v.is_zero()) {
        write_u32be(out, 0);
        return;
    }
    std::vector<unsigned char> bytes;
    boost::multiprecision::export_bits(v, std::back_inserter(bytes), 8);
    write_u32be(out, static_cast<std::uint32_t>(bytes.size()));
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

Count read_count(std::istream& in) {
    const std::uint32_t len = read_u32be(in);
    if (len == 0) return Count(0);
    std::vector<unsigned char> bytes(len);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(len));
    if (!in) throw std::runtime_error("counting table stream truncated");
    Count v;
    boost::multiprecision::import_bits(v, bytes.begin(), bytes.end(), 8);
    return v;
}

}  // namespace

void CountingTables::save(std::ostream& out) const {
    out.write(kTableMagic, 4);
    write_u32be(out, kTableVersion);
    write_u32be(out, order_);
    write_u32be(out, internal_len_);
    write_u32be(out, max_weight_);
    for (const Count& v : entries_) write_count(out, v);
    for (const Count& v : layer_sizes_) write_count(out, v);
    for (const Count& v : layer_offsets_) write_count(out, v);
    if (!out) throw std::runtime_error("failed to write counting tables");
}

CountingTables CountingTables::load(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kTableMagic))
        throw std::runtime_error("not a counting table container");
    const std::uint32_t version = read_u32be(in);
    if (version != kTableVersion)
        throw std::runtime_error("unsupported counting table version " + std::to_string(version));
    CountingTables t;
    t.order_ = read_u32be(in);
    t.internal_len_ = read_u32be(in);
    t.max_weight_ = read_u32be(in);
    if (t.order_ == 0 || t.max_weight_ > t.internal_len_ ||
        t.max_weight_ != (t.internal_len_ + t.order_) / (t.order_ + 1))
        throw std::runtime_error("counting table header is inconsistent");
    const std::size_t n_entries =
        static_cast<std::size_t>(t.internal_len_ + 1) * (t.internal_len_ + 1) * (t.order_ + 1);
    t.entries_.reserve(n_entries);
    for (std::size_t j = 0; j < n_entries; ++j) t.entries_.push_back(read_count(in));
    for (unsigned w = 0; w <= t.max_weight_; ++w) t.layer_sizes_.push_back(read_count(in));
    for (unsigned w = 0; w <= t.max_weight_ + 1; ++w) t.layer_offsets_.push_back(read_count(in));
    return t;
}

Count count_with_zero(const CountingTables& tables, const PrefixState& state) {
    if (state.remaining_len == 0) return Count(0);
    const unsigned fz = state.forced_zeros > 0 ? state.forced_zeros - 1 : 0;
    return tables.entry(state.remaining_len - 1, state.remaining_weight, fz);
}

LayerLocation locate_layer(const CountingTables& tables, const Count& rank) {
    if (rank < 0) throw std::out_of_range("rank is negative");
    for (unsigned w = 0; w <= tables.max_weight(); ++w) {
        if (rank < tables.layer_offset(w + 1))
            return {w, rank - tables.layer_offset(w)};
    }
    throw std::out_of_range("rank exceeds the family size");
}

}  // namespace rlim
