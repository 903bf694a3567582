#include "semcomm/channel.hpp"

#include <cmath>

namespace semcomm {

void check_valid(const DiscreteChannel& channel) {
    if (channel.transition.rows() != channel.input_alphabet.size())
        throw config_error("DiscreteChannel: row count does not match input alphabet");
    if (channel.transition.cols() != channel.output_alphabet.size())
        throw config_error("DiscreteChannel: column count does not match output alphabet");
    check_row_stochastic(channel.transition, "DiscreteChannel.transition");
}

DiscreteChannel bsc(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5))
        throw config_error("bsc: crossover must lie in [0, 0.5]");
    DiscreteChannel c;
    c.input_alphabet = {"0", "1"};
    c.output_alphabet = {"0", "1"};
    c.transition = Matrix{{1.0 - epsilon, epsilon}, {epsilon, 1.0 - epsilon}};
    return c;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double snr_to_crossover(double snr_linear) {
    if (!(snr_linear >= 0.0)) throw config_error("snr_to_crossover: snr must be >= 0");
    return q_function(std::sqrt(2.0 * snr_linear));
}

std::vector<int> transmit(const DiscreteChannel& channel, std::span<const int> x, Rng& rng) {
    check_valid(channel);
    std::vector<int> y(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        const int s = x[t];
        if (s < 0 || s >= static_cast<int>(channel.transition.rows()))
            throw config_error("transmit: symbol outside channel input alphabet");
        y[t] = static_cast<int>(rng.discrete(channel.transition.row(s)));
    }
    return y;
}

std::vector<int> transmit(const DiscreteChannel& channel, std::span<const int> x,
                          std::uint64_t seed) {
    Rng rng(seed);
    return transmit(channel, x, rng);
}

void check_valid(const FadingProfile& profile) {
    if (!(profile.mean_snr > 0.0)) throw config_error("FadingProfile: mean_snr must be > 0");
    if (profile.kind == FadingProfile::Kind::rayleigh_block && profile.block_length < 1)
        throw config_error("FadingProfile: block_length must be >= 1");
}

double draw_block_snr(const FadingProfile& profile, Rng& rng) {
    if (profile.kind == FadingProfile::Kind::none) return profile.mean_snr;
    // Rayleigh amplitude -> exponential power with the configured mean.
    return rng.exponential(profile.mean_snr);
}

}  // namespace semcomm
