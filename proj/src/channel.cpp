#include "rlim/channel.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace rlim {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632BE59BD9B4E019ull)));
}

void ChannelParams::validate() const {
    if (!(diffusion > 0)) throw std::invalid_argument("diffusion coefficient must be positive");
    if (!(receiver_radius > 0)) throw std::invalid_argument("receiver radius must be positive");
    if (!(distance > receiver_radius))
        throw std::invalid_argument("transmitter distance must exceed the receiver radius");
    if (!(interval_s > 0)) throw std::invalid_argument("slot duration must be positive");
    if (molecules == 0) throw std::invalid_argument("molecule budget must be at least 1");
    if (!(noise_var >= 0)) throw std::invalid_argument("noise variance must be non-negative");
    if (memory == 0) throw std::invalid_argument("interference horizon must be at least 1 slot");
}

ChannelParams ChannelParams::from_config(const KeyValueConfig& cfg) {
    cfg.require_known({"D", "rR", "r0", "ts", "M", "sigma2", "I", "seed"});
    ChannelParams p;
    p.diffusion = cfg.get_double("D", p.diffusion);
    p.receiver_radius = cfg.get_double("rR", p.receiver_radius);
    p.distance = cfg.get_double("r0", p.distance);
    p.interval_s = cfg.get_double("ts", p.interval_s);
    p.molecules = cfg.get_uint("M", p.molecules);
    p.noise_var = cfg.get_double("sigma2", p.noise_var);
    p.memory = static_cast<unsigned>(cfg.get_uint("I", p.memory));
    p.validate();
    return p;
}

double absorption_cdf(const ChannelParams& params, double t) {
    if (t < 0) throw std::domain_error("absorption time must be non-negative");
    if (t == 0) return 0.0;
    const double ratio = params.receiver_radius / params.distance;
    const double gap = params.distance - params.receiver_radius;
    return ratio * std::erfc(gap / std::sqrt(4.0 * params.diffusion * t));
}

TapProfile tap_profile(const ChannelParams& params) {
    params.validate();
    TapProfile profile;
    profile.taps.reserve(params.memory);
    double prev = 0.0;
    for (unsigned slot = 1; slot <= params.memory; ++slot) {
        const double cur = absorption_cdf(params, slot * params.interval_s);
        profile.taps.push_back(cur - prev);
        prev = cur;
    }
    profile.tail = 1.0 - prev;
    return profile;
}

Channel::Channel(ChannelParams params, Rng rng)
    : params_(params), profile_(tap_profile(params)), rng_(rng) {
    params_.validate();
}

std::vector<std::uint64_t> Channel::emit() {
    // Multinomial split of one burst, drawn category by category: each tap
    // takes a binomial share of the molecules still undecided, with the tap
    // probability renormalized by the remaining mass.
    const std::size_t cats = profile_.taps.size() + 1;
    std::vector<std::uint64_t> counts(cats, 0);
    std::uint64_t remaining = params_.molecules;
    double mass_left = 1.0;
    for (std::size_t c = 0; c + 1 < cats && remaining > 0; ++c) {
        const double p = profile_.taps[c];
        double cond = mass_left > 0 ? p / mass_left : 1.0;
        if (cond < 0.0) cond = 0.0;
        if (cond > 1.0) cond = 1.0;
        std::binomial_distribution<std::uint64_t> dist(remaining, cond);
        const std::uint64_t drawn = dist(rng_.engine());
        counts[c] = drawn;
        remaining -= drawn;
        mass_left -= p;
    }
    counts[cats - 1] = remaining;  // tail: arrivals beyond the horizon
    return counts;
}

std::vector<std::int64_t> Channel::simulate(const std::vector<std::uint8_t>& bits) {
    std::vector<std::int64_t> received(bits.size(), 0);
    for (std::size_t t = 0; t < bits.size(); ++t) {
        if (!bits[t]) continue;
        const std::vector<std::uint64_t> burst = emit();
        for (std::size_t slot = 0; slot < profile_.taps.size(); ++slot) {
            const std::size_t at = t + slot;  // tap 0 lands in the emission slot
            if (at >= received.size()) break;
            received[at] += static_cast<std::int64_t>(burst[slot]);
        }
    }
    if (params_.noise_var > 0) {
        std::normal_distribution<double> noise(0.0, std::sqrt(params_.noise_var));
        for (std::int64_t& value : received) {
            value += std::llround(noise(rng_.engine()));
            if (value < 0) value = 0;
        }
    } else {
        for (std::int64_t& value : received)
            if (value < 0) value = 0;
    }
    return received;
}

std::vector<std::int64_t> simulate_reception(const ChannelParams& params,
                                             const std::vector<std::uint8_t>& bits,
                                             const Rng& rng) {
    Channel channel(params, rng);
    return channel.simulate(bits);
}

void write_counts_csv(std::ostream& out, const std::vector<std::int64_t>& counts) {
    out << "slot,count\n";
    for (std::size_t t = 0; t < counts.size(); ++t) out << t << ',' << counts[t] << '\n';
}

}  // namespace rlim
