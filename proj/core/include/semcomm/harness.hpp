#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semcomm/channel.hpp"
#include "semcomm/codec.hpp"
#include "semcomm/language.hpp"

namespace semcomm::link {

/// End-to-end link experiment: sentences drawn from the language prior,
/// syntactically encoded, pushed through a BSC derived from each SNR
/// grid point (optionally block-Rayleigh faded), then decoded both ways.
struct Experiment {
    SentenceLanguage language;
    std::vector<ClassId> kb_destination;  // empty: same partition as the source
    SyntacticCodec codec;
    FadingProfile::Kind fading = FadingProfile::Kind::none;
    int fade_block_bits = 1 << 20;        // fade realization length; default spans any sentence
    std::vector<double> snr_grid_db;
    long trials = 100000;
    std::uint64_t seed = 1;
    double tau = 0.9;
};

void check_valid(const Experiment& exp);

/// Per-SNR tallies. Similarity is meaning-class agreement between what
/// the source meant and what the destination understood; the CI half
/// width (normal approximation with continuity correction) applies to
/// similarity and to the semantic error rate alike.
struct Metrics {
    double snr_db = 0.0;
    long trials = 0;
    double syn_symbol_err = 0.0;    // per-word error rate of the syntactic path
    double syn_sentence_err = 0.0;  // any wrong word
    double sem_err = 0.0;           // meaning-class mismatch under KB_D
    double similarity = 0.0;        // 1 - sem_err
    double ci_half_width = 0.0;
};

std::vector<Metrics> simulate_link(const Experiment& exp);

struct ArqMetrics {
    double snr_db = 0.0;
    double sem_retx_rate = 0.0;      // retransmissions per sentence, semantic feedback
    double syn_retx_rate = 0.0;      // retransmissions per sentence, genie syntactic ARQ
    double residual_sem_err = 0.0;   // accepted deliveries with the wrong meaning
    double goodput = 0.0;            // meaning-correct deliveries per channel use
};

/// Stop-and-wait ARQ comparison. The syntactic scheme retransmits on
/// any symbol error (genie detection); the semantic scheme retransmits
/// only when semantic_error_detect fires. Retransmissions resend the
/// same encoding through fresh noise.
std::vector<ArqMetrics> simulate_arq(const Experiment& exp, int max_retx);

/// CSV rows (header + one line per SNR point) for a link sweep.
std::string sweep_snr(const Experiment& exp);

/// CSV rows for an ARQ sweep.
std::string sweep_arq(const Experiment& exp, int max_retx);

/// Worker threads used for embarrassingly parallel trials; reads
/// SEMCOMM_THREADS, clamped to [1, 64]. Results do not depend on it.
int worker_count();

}  // namespace semcomm::link
