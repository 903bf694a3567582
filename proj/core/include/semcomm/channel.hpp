#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "semcomm/matrix.hpp"
#include "semcomm/rng.hpp"

namespace semcomm {

/// Memoryless channel over finite alphabets: row-stochastic p(y|x),
/// applied independently per symbol.
struct DiscreteChannel {
    std::vector<std::string> input_alphabet;
    std::vector<std::string> output_alphabet;
    Matrix transition;  // |input| x |output|
};

void check_valid(const DiscreteChannel& channel);

/// Binary symmetric channel with crossover epsilon in [0, 0.5].
DiscreteChannel bsc(double epsilon);

/// Gaussian tail probability Q(x), via erfc.
double q_function(double x);

/// BSC crossover induced by hard-decision BPSK at the given linear SNR:
/// epsilon = Q(sqrt(2 snr)). Monotone nonincreasing in snr.
double snr_to_crossover(double snr_linear);

inline double snr_db_to_linear(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

/// One channel use per input symbol, outputs drawn from the matching
/// transition row.
std::vector<int> transmit(const DiscreteChannel& channel, std::span<const int> x, Rng& rng);

/// Seeded convenience overload; identical seeds give identical outputs.
std::vector<int> transmit(const DiscreteChannel& channel, std::span<const int> x,
                          std::uint64_t seed);

/// SNR process for a link: either a fixed SNR or block-Rayleigh, where
/// each block sees an exponentially distributed SNR with the given
/// mean. Fade state resets at sentence boundaries; a block_length no
/// shorter than the sentence gives one realization per sentence (the
/// default wired up by the config loader).
struct FadingProfile {
    enum class Kind { none, rayleigh_block };
    Kind kind = Kind::none;
    double mean_snr = 1.0;   // linear power ratio
    int block_length = 1;    // symbols per fade realization, >= 1
};

void check_valid(const FadingProfile& profile);

/// SNR realization for the next fade block.
double draw_block_snr(const FadingProfile& profile, Rng& rng);

}  // namespace semcomm
