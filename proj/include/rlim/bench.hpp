#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rlim/bigint.hpp"
#include "rlim/channel.hpp"
#include "rlim/codec.hpp"
#include "rlim/config.hpp"
#include "rlim/enumeration.hpp"

namespace rlim {

// Shares counting tables across schemes and grid points; tables depend only
// on (order, internal length).
class TableCache {
public:
    std::shared_ptr<const CountingTables> get(unsigned order, unsigned internal_len);

private:
    std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const CountingTables>> cache_;
};

enum class SchemeKind {
    Uncoded,       // raw bits, one channel slot per info bit
    RlimTable,     // weight-minimized code via counting tables
    RllLex,        // generation-order baseline code
    RlimCodebook,  // same code as RlimTable, realized as an explicit table
};

struct SchemeConfig {
    SchemeKind kind = SchemeKind::Uncoded;
    unsigned order = 0;  // 0 for uncoded
    Mode mode = Mode::Enhanced;
    std::string label;  // original text, echoed into reports

    // Accepts "uncoded", "rlim:<i>:<mode>", "rll:<i>:<mode>",
    // "rlimfull:<i>:<mode>".
    static SchemeConfig parse(std::string_view text);
};

// A scheme resolved against a code size and a reference budget: block shape,
// codebook weight, and the normalized per-burst/per-slot resources that keep
// the molecule and time budget per info bit equal to the uncoded reference.
struct SchemeSpec {
    SchemeConfig config;
    unsigned info_bits = 1;  // K, info bits per block
    unsigned block_len = 1;  // n, channel bits per block
    Count weight = 1;         // W, total weight of the codebook
    Count reference_weight = 1;  // K * 2^(K-1), weight of the uncoded book
    Rational interval_s{1};      // normalized slot duration
    std::uint64_t molecules = 0; // normalized burst size

    std::shared_ptr<const RlimCodec> rlim;
    std::shared_ptr<const RllLexCodec> rll;
    std::shared_ptr<const Codebook> book;

    double interval_seconds() const;
};

// Resolves a scheme at k info bits against the uncoded reference budget
// (base_molecules per burst, base_interval per slot).
SchemeSpec normalize(const SchemeConfig& config, unsigned info_bits,
                     std::uint64_t base_molecules, const Rational& base_interval,
                     TableCache& tables);

// Blocks the info bits (MSB-first per block) and concatenates codewords.
// A trailing partial block is dropped.
std::vector<std::uint8_t> encode_stream(const SchemeSpec& spec,
                                        const std::vector<std::uint8_t>& info_bits);

// Thresholds the slot counts at tau and runs the block receiver.
std::vector<std::uint8_t> decode_stream(const SchemeSpec& spec,
                                        const std::vector<std::int64_t>& counts,
                                        std::int64_t tau);

struct ThresholdFit {
    std::int64_t tau = 0;
    std::uint64_t errors = 0;  // info-bit errors over the training window
};

// Exhaustive runs the full receiver for every candidate in 0..max(train
// counts), as the protocol prescribes. CoarseThenFine probes a stride first
// and refines around the best probe; faster but an approximation, so it is
// never the default.
enum class ThresholdSearch { Exhaustive, CoarseThenFine };

// Picks the candidate threshold with the fewest training-window info-bit
// errors. Ties go to the minimizer nearest the midpoint of the minimizer
// set (within one), then to the smallest minimizer.
ThresholdFit train_threshold(const SchemeSpec& spec,
                             const std::vector<std::int64_t>& train_counts,
                             const std::vector<std::uint8_t>& train_info,
                             ThresholdSearch search = ThresholdSearch::Exhaustive);

double evaluate_ber(const SchemeSpec& spec, const std::vector<std::int64_t>& test_counts,
                    const std::vector<std::uint8_t>& test_info, std::int64_t tau);

struct SweepPlan {
    std::vector<SchemeConfig> schemes;
    unsigned info_bits_k = 16;
    std::string param = "M0";        // M0 | ts0 | r0 | sigma2 | D | k
    std::vector<std::string> grid;   // raw value texts, parsed per param
    std::vector<std::uint64_t> seeds;
    std::uint64_t train_bits = 10000;
    std::uint64_t test_bits = 100000;
    std::uint64_t base_molecules = 500;  // M0
    Rational base_interval{1, 5};        // ts0
    ChannelParams physics;               // D, rR, r0, sigma2, I (interval/molecules overridden)
    ThresholdSearch search = ThresholdSearch::Exhaustive;

    // Keys: schemes, k, param, grid, seeds, train_bits, test_bits,
    // M0, ts0, D, rR, r0, sigma2, I, threshold_search.
    static SweepPlan from_config(const KeyValueConfig& cfg);
};

struct SweepRow {
    std::string scheme;
    unsigned order = 0;
    unsigned block_info_bits = 1;
    char mode = '-';
    std::string param;
    std::string value;
    std::uint64_t seed = 0;
    double ber = 0.0;
    std::int64_t tau = 0;
    std::uint64_t eval_bits = 0;
    std::string error;  // set when the point failed; ber is NaN then
};

// One simulated stream per (grid point, scheme, seed): training window and
// test window are transmitted back to back so interference carries across.
// Info bits are shared across schemes at the same point and seed.
std::vector<SweepRow> run_sweep(const SweepPlan& plan);

// Columns: scheme,i,k,mode,param,value,seed,ber,tau,info_bits.
void write_ber_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Per-block seconds for one code realization; mean and median are taken
// over the timed repetitions.
struct TimingStat {
    double mean_s = 0.0;
    double median_s = 0.0;
};

struct RealizationTiming {
    bool measured = false;   // false when the materialization guard excluded it
    double preprocess_s = 0; // one-time build (tables or explicit book)
    TimingStat encode;       // message -> codeword
    TimingStat decode;       // clean codeword -> rank -> message
    TimingStat project;      // corrupted word -> correction -> projection
};

struct StorageReport {
    unsigned order = 0;
    unsigned info_bits_k = 0;
    unsigned block_len = 0;       // n
    unsigned internal_len = 0;    // T
    Count full_codebook_bits = 0; // n * 2^k, the plain listing
    std::size_t table_bits = 0;   // counting-table footprint
    double ratio = 0.0;           // full_codebook_bits / table_bits
    std::size_t blocks = 0;       // timed random blocks (0 when timing skipped)
    unsigned runs = 0;
    RealizationTiming enumerative;
    RealizationTiming codebook;
};

struct StorageOptions {
    bool with_timing = true;
    std::uint64_t seed = 1;
    std::size_t blocks = 1000;  // random blocks per timed repetition
    unsigned runs = 5;          // timed repetitions after one warm-up
    unsigned book_guard_bits = Codebook::kDefaultMaxInfoBits;
};

// Storage footprints for each k, plus (optionally) timings of the
// table-driven realization against the explicit codebook. Codebook metrics
// past the guard are reported as not measured, never computed.
std::vector<StorageReport> storage_runtime_report(unsigned order,
                                                  const std::vector<unsigned>& info_bits,
                                                  Mode mode, TableCache& tables,
                                                  const StorageOptions& options = {});

// Least-squares slope of log(table_bits) against log(k); bounds the
// polynomial growth order of the table footprint.
double storage_log_slope(const std::vector<StorageReport>& rows);

void write_storage_csv(std::ostream& out, const std::vector<StorageReport>& rows);
void write_storage_json(std::ostream& out, Mode mode, const std::vector<StorageReport>& rows);

}  // namespace rlim
