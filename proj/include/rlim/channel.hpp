#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "rlim/config.hpp"

namespace rlim {

// Deterministic generator with stable stream splitting: children derive from
// the stored seed only, never from engine state, so split order and draw
// order cannot affect each other.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    Rng split(std::uint64_t stream) const;

    std::mt19937_64& engine() { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Purely diffusive link to a fully absorbing spherical receiver. Distances
// are micrometers, times seconds, the diffusion coefficient um^2/s.
struct ChannelParams {
    double diffusion = 79.4;       // D
    double receiver_radius = 5.0;  // rR
    double distance = 10.0;        // r0, transmitter to receiver centre
    double interval_s = 0.2;       // slot duration ts
    std::uint64_t molecules = 500; // emitted per 1-bit
    double noise_var = 5.0;        // additive counting-noise variance
    unsigned memory = 100;         // interference horizon in slots

    void validate() const;

    // Reads D, rR, r0, ts, M, sigma2, I; a seed key is allowed but left to
    // the caller. Missing keys keep their defaults.
    static ChannelParams from_config(const KeyValueConfig& cfg);
};

// Probability that a molecule released at distance r0 is absorbed within
// time t. Zero at t = 0; negative t is a domain error.
double absorption_cdf(const ChannelParams& params, double t);

struct TapProfile {
    std::vector<double> taps;  // arrival probability per slot, current slot first
    double tail = 0.0;         // mass beyond the interference horizon
};

TapProfile tap_profile(const ChannelParams& params);

// Slot-synchronous reception simulator. Each 1-bit releases a burst whose
// arrivals spread over the following `memory` slots; counting noise is added
// per slot and negative totals clamp to zero.
class Channel {
public:
    Channel(ChannelParams params, Rng rng);

    const ChannelParams& params() const { return params_; }
    const TapProfile& profile() const { return profile_; }

    // Splits one emission burst over the taps and the tail, in tap order.
    // Returns memory+1 counts; the last one is the lost tail.
    std::vector<std::uint64_t> emit();

    // Received molecule count per slot for a full transmit bit stream.
    std::vector<std::int64_t> simulate(const std::vector<std::uint8_t>& bits);

private:
    ChannelParams params_;
    TapProfile profile_;
    Rng rng_;
};

std::vector<std::int64_t> simulate_reception(const ChannelParams& params,
                                             const std::vector<std::uint8_t>& bits,
                                             const Rng& rng);

// Two-column CSV (slot, count) with a header row.
void write_counts_csv(std::ostream& out, const std::vector<std::int64_t>& counts);

}  // namespace rlim
