// Acceptance gate for the toolkit: nine numbered criteria, one [PASS] or
// [FAIL] line each, exit code equal to the number of failures. Criteria can
// be selected by listing their numbers as arguments; no arguments runs all.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "rlim/bench.hpp"
#include "rlim/bigint.hpp"
#include "rlim/bitword.hpp"
#include "rlim/channel.hpp"
#include "rlim/codec.hpp"
#include "rlim/enumeration.hpp"

namespace {

using namespace rlim;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }
Outcome pass(std::string detail) { return {true, std::move(detail)}; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---- criterion 1: enumerative order matches brute force -------------------

Outcome criterion_ordering() {
    const auto start = Clock::now();
    std::size_t words = 0;
    for (unsigned order = 1; order <= 5; ++order)
        for (unsigned internal = 1; internal <= 18; ++internal) {
            const std::vector<std::string> expect =
                oracle::pad(oracle::weight_then_lex(order, internal), order);
            const CodeParams params =
                CodeParams::with_length(order, 1, Mode::Enhanced, internal + order);
            const RlimCodec codec = RlimCodec::create(params);
            if (codec.tables().family_total() != expect.size())
                return fail("family size mismatch at i=" + std::to_string(order) +
                            " T=" + std::to_string(internal));
            for (std::size_t r = 0; r < expect.size(); ++r) {
                if (codec.word_at_rank(Count(r)).str() != expect[r])
                    return fail("unrank mismatch at i=" + std::to_string(order) +
                                " T=" + std::to_string(internal) + " rank " + std::to_string(r));
                if (codec.rank_word(BitWord::from_string(expect[r])) != r)
                    return fail("rank mismatch at i=" + std::to_string(order) +
                                " T=" + std::to_string(internal) + " rank " + std::to_string(r));
                ++words;
            }
        }
    const double elapsed = seconds_since(start);
    if (elapsed > 120.0) return fail("exceeded the 120 s budget: " + fmt(elapsed) + " s");
    return pass(std::to_string(words) + " positions over i=1..5, T=1..18 in " + fmt(elapsed) +
                " s");
}

// ---- criterion 2: encode/decode bijection ----------------------------------

Outcome criterion_bijection() {
    const auto start = Clock::now();
    std::size_t checks = 0;
    for (Mode mode : {Mode::Enhanced, Mode::NonEnhanced})
        for (unsigned order = 1; order <= 5; ++order) {
            for (unsigned k = 1; k <= 12; ++k) {
                const RlimCodec codec = RlimCodec::create(CodeParams::resolve(order, k, mode));
                const Count top = codec.params().message_count();
                for (Count m = 0; m < top; ++m, ++checks)
                    if (codec.project_decode(codec.encode(m)) != m)
                        return fail("bijection broken at i=" + std::to_string(order) +
                                    " k=" + std::to_string(k) + " mode " + mode_char(mode) +
                                    " m=" + m.str());
            }
            for (unsigned k : {13u, 16u, 24u, 32u, 40u}) {
                const RlimCodec codec = RlimCodec::create(CodeParams::resolve(order, k, mode));
                std::mt19937_64 rng(0xC0DEu * order + k + (mode == Mode::Enhanced ? 0 : 7));
                const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
                for (int draw = 0; draw < 10000; ++draw, ++checks) {
                    const Count m = Count(rng() & mask);
                    if (codec.project_decode(codec.encode(m)) != m)
                        return fail("bijection broken at i=" + std::to_string(order) +
                                    " k=" + std::to_string(k) + " mode " + mode_char(mode) +
                                    " m=" + m.str());
                }
            }
        }
    return pass(std::to_string(checks) + " messages round-tripped in " +
                fmt(seconds_since(start)) + " s");
}

// ---- criterion 3: storage footprint at i=3, k=16 ---------------------------

Outcome criterion_footprint() {
    if (shortest_length(3, 16, Mode::Enhanced) != 37 ||
        shortest_length(3, 16, Mode::NonEnhanced) != 37)
        return fail("shortest length at i=3, k=16 is not 37");
    TableCache cache;
    StorageOptions options;
    options.with_timing = false;
    const StorageReport row = storage_runtime_report(3, {16}, Mode::Enhanced, cache, options)[0];
    if (row.full_codebook_bits != 2424832)
        return fail("full codebook bits: expected 2424832, got " + row.full_codebook_bits.str());
    if (row.table_bits < 5000 || row.table_bits > 20000)
        return fail("table bits " + std::to_string(row.table_bits) + " outside [5000, 20000]");
    if (row.ratio < 100.0) return fail("compression ratio " + fmt(row.ratio) + " below 100");
    return pass("n=37, full=2424832 bits, tables=" + std::to_string(row.table_bits) +
                " bits, ratio=" + fmt(row.ratio));
}

// ---- criterion 4: growth rates over k --------------------------------------

Outcome criterion_growth() {
    std::vector<unsigned> ks;
    for (unsigned k = 8; k <= 40; ++k) ks.push_back(k);
    TableCache cache;
    StorageOptions options;
    options.with_timing = false;
    const std::vector<StorageReport> rows =
        storage_runtime_report(3, ks, Mode::Enhanced, cache, options);
    for (const StorageReport& row : rows) {
        const Count expect = Count(row.block_len) << row.info_bits_k;
        if (row.full_codebook_bits != expect)
            return fail("full codebook bits at k=" + std::to_string(row.info_bits_k) +
                        ": expected " + expect.str() + ", got " + row.full_codebook_bits.str());
    }
    for (std::size_t j = 1; j < rows.size(); ++j)
        if (rows[j].full_codebook_bits < 2 * rows[j - 1].full_codebook_bits)
            return fail("full codebook bits fail to double from k=" +
                        std::to_string(rows[j - 1].info_bits_k));
    const double slope = storage_log_slope(rows);
    if (slope > 3.5) return fail("log-log slope " + fmt(slope) + " exceeds 3.5");
    return pass("exponential listing vs table slope " + fmt(slope) + " over k=8..40");
}

// ---- criterion 5: correction optimality ------------------------------------

Outcome criterion_correction() {
    const auto start = Clock::now();
    std::size_t words = 0;
    for (unsigned order = 1; order <= 3; ++order)
        for (unsigned length = 1; length <= 12; ++length) {
            const std::vector<std::string> candidates = oracle::padded_words(order, length);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length); ++mask, ++words) {
                const std::string received = oracle::bits_of(mask, length);
                const BitWord corrected = correct_received(BitWord::from_string(received), order);
                if (!corrected.admissible(order))
                    return fail("correction left '" + received + "' inadmissible at i=" +
                                std::to_string(order));
                const unsigned got = oracle::hamming(received, corrected.str());
                const unsigned best = oracle::min_distance(received, candidates);
                if (got != best)
                    return fail("correction of '" + received + "' at i=" + std::to_string(order) +
                                " reaches distance " + std::to_string(got) + ", optimum is " +
                                std::to_string(best));
            }
        }
    const double elapsed = seconds_since(start);
    if (elapsed > 60.0) return fail("exceeded the 60 s budget: " + fmt(elapsed) + " s");
    return pass(std::to_string(words) + " received words over i=1..3, n=1..12 in " +
                fmt(elapsed) + " s");
}

// ---- criterion 6: channel statistics ---------------------------------------

Outcome criterion_channel() {
    ChannelParams params;  // desk defaults: D=79.4, rR=5, r0=10, ts=0.2, I=100
    const TapProfile profile = tap_profile(params);
    double total = profile.tail;
    for (double tap : profile.taps) total += tap;
    if (std::abs(total - 1.0) > 1e-12)
        return fail("taps plus tail deviate from 1 by " + fmt(std::abs(total - 1.0)));

    const double limit = absorption_cdf(params, 1e18);
    const double hit = params.receiver_radius / params.distance;
    if (std::abs(limit - hit) > 1e-9)
        return fail("eventual hitting probability " + fmt(limit) + " is not " + fmt(hit));

    params.molecules = 100;
    Channel channel(params, Rng(20260819));
    const std::size_t reps = 100000;
    std::vector<std::uint64_t> landed(params.memory + 1, 0);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        const std::vector<std::uint64_t> burst = channel.emit();
        for (std::size_t slot = 0; slot < burst.size(); ++slot) landed[slot] += burst[slot];
    }
    const double trials = static_cast<double>(reps) * static_cast<double>(params.molecules);
    for (unsigned slot = 0; slot < 10; ++slot) {
        const double p = profile.taps[slot];
        const double observed = static_cast<double>(landed[slot]) / trials;
        const double se = std::sqrt(p * (1.0 - p) / trials);
        if (std::abs(observed - p) > 3.0 * se)
            return fail("slot " + std::to_string(slot + 1) + " absorption " + fmt(observed) +
                        " deviates from " + fmt(p) + " by more than 3 standard errors");
    }
    return pass("mass conservation, 10-slot empirical absorption at 3 SE over " +
                std::to_string(reps) + " bursts, and the eventual-hitting limit");
}

// ---- criteria 7-9: benchmark experiments -----------------------------------

SweepPlan paper_point_plan() {
    SweepPlan plan;
    plan.schemes = {SchemeConfig::parse("uncoded"), SchemeConfig::parse("rlim:3:E"),
                    SchemeConfig::parse("rll:3:E")};
    plan.info_bits_k = 16;
    plan.param = "M0";
    plan.grid = {"500"};
    plan.seeds = {1, 2, 3};
    plan.train_bits = 10000;
    plan.test_bits = 100000;
    plan.base_molecules = 500;
    plan.base_interval = Rational(1, 5);  // ts0 = 0.2 s
    plan.physics.noise_var = 5.0;
    plan.physics.memory = 100;
    return plan;
}

Outcome criterion_ber() {
    const auto start = Clock::now();
    const SweepPlan plan = paper_point_plan();
    const std::vector<SweepRow> rows = run_sweep(plan);
    double uncoded = 0, rlim = 0, rll = 0;
    int seen = 0;
    for (const SweepRow& row : rows) {
        if (!row.error.empty()) return fail("point failed: " + row.error);
        if (row.scheme == "uncoded") uncoded += row.ber;
        if (row.scheme == "rlim:3:E") rlim += row.ber;
        if (row.scheme == "rll:3:E") rll += row.ber;
        ++seen;
    }
    if (seen != 9) return fail("expected 9 sweep rows, got " + std::to_string(seen));
    uncoded /= 3;
    rlim /= 3;
    rll /= 3;
    const double elapsed = seconds_since(start);
    if (elapsed > 600.0) return fail("exceeded the 600 s budget: " + fmt(elapsed) + " s");
    if (!(rlim < uncoded && rlim < rll))
        return fail("seed-averaged BER not dominant: rlim=" + fmt(rlim) + " uncoded=" +
                    fmt(uncoded) + " rll=" + fmt(rll));
    return pass("seed-averaged BER rlim=" + fmt(rlim) + " < uncoded=" + fmt(uncoded) +
                " and < rll=" + fmt(rll) + " in " + fmt(elapsed) + " s");
}

Outcome criterion_normalization() {
    const SweepPlan plan = paper_point_plan();
    TableCache cache;
    const Count reference = Count(plan.info_bits_k) << (plan.info_bits_k - 1);
    for (const SchemeConfig& config : plan.schemes) {
        const SchemeSpec spec = normalize(config, plan.info_bits_k, plan.base_molecules,
                                          plan.base_interval, cache);
        // Exact time budget: n slots of the normalized duration equal K
        // reference slots.
        if (spec.interval_s * spec.block_len != plan.base_interval * spec.info_bits)
            return fail("time budget broken for " + config.label);

        // Burst budget against a brute-force codebook weight.
        Count brute = 0;
        if (config.kind == SchemeKind::Uncoded) {
            brute = 1;
            if (spec.molecules != plan.base_molecules)
                return fail("uncoded burst size changed");
        } else {
            const CodeParams params =
                CodeParams::resolve(config.order, plan.info_bits_k, config.mode);
            const Ordering ordering = config.kind == SchemeKind::RllLex
                                          ? Ordering::LexGeneration
                                          : Ordering::WeightThenLex;
            const Codebook book = Codebook::materialize(params, ordering);
            for (std::size_t idx = 0; idx < book.size(); ++idx)
                brute += book.word(idx).weight();
            if (spec.weight != brute)
                return fail("codebook weight for " + config.label + ": normalize found " +
                            spec.weight.str() + ", brute force " + brute.str());
            const Count expect =
                round_half_even(Rational(Count(plan.base_molecules) * reference, brute));
            if (Count(spec.molecules) != expect)
                return fail("burst size for " + config.label + ": expected " + expect.str() +
                            ", got " + std::to_string(spec.molecules));
        }
    }

    // The frozen desk numbers for the two coded schemes.
    const SchemeSpec rlim = normalize(SchemeConfig::parse("rlim:3:E"), 16, 500, Rational(1, 5),
                                      cache);
    const SchemeSpec rll = normalize(SchemeConfig::parse("rll:3:E"), 16, 500, Rational(1, 5),
                                     cache);
    if (rlim.weight != 329718 || rlim.molecules != 795)
        return fail("rlim:3:E normalization drifted from W=329718, M=795");
    if (rll.weight != 343276 || rll.molecules != 764)
        return fail("rll:3:E normalization drifted from W=343276, M=764");
    return pass("time and molecule budgets exact for all criterion-7 schemes at k=16");
}

Outcome criterion_repeatability() {
    const SweepPlan plan = paper_point_plan();
    std::ostringstream first, second;
    write_ber_csv(first, run_sweep(plan));
    write_ber_csv(second, run_sweep(plan));
    if (first.str() != second.str()) return fail("repeated sweep CSV differs byte for byte");
    return pass("two sweep repetitions agree byte for byte (" +
                std::to_string(first.str().size()) + " bytes)");
}

struct Criterion {
    int number;
    const char* title;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "enumerative order matches brute force", criterion_ordering},
    {2, "encode/decode bijection", criterion_bijection},
    {3, "table footprint at i=3, k=16", criterion_footprint},
    {4, "storage growth over k", criterion_growth},
    {5, "correction optimality", criterion_correction},
    {6, "channel statistics", criterion_channel},
    {7, "coded BER beats the baselines", criterion_ber},
    {8, "resource normalization identities", criterion_normalization},
    {9, "sweep repeatability", criterion_repeatability},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int a = 1; a < argc; ++a) {
        char* end = nullptr;
        const long n = std::strtol(argv[a], &end, 10);
        if (end == argv[a] || *end != '\0' || n < 1 || n > 9) {
            std::fprintf(stderr, "error: '%s' is not a criterion number (1-9)\n", argv[a]);
            return 64;
        }
        wanted.insert(static_cast<int>(n));
    }

    int failures = 0;
    for (const Criterion& criterion : kCriteria) {
        if (!wanted.empty() && wanted.count(criterion.number) == 0) continue;
        Outcome outcome;
        try {
            outcome = criterion.run();
        } catch (const std::exception& e) {
            outcome = fail(std::string("unexpected exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s - %s\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.number, criterion.title, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
