#include "semcomm/harness.hpp"

#include <cmath>

#include "doctest.h"
#include "support/fixtures.hpp"

using namespace semcomm;
using namespace semcomm::link;

namespace {

Experiment structured_experiment() {
    Experiment exp;
    exp.language = build_sentence_language(fixtures::structured_grammar());
    exp.trials = 20000;
    exp.seed = 7;
    return exp;
}

// Binomial 3-sigma bound for a rate difference estimated from n trials.
double sigma3(double p, long n) {
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("clean channel: every error rate is zero") {
    Experiment exp = structured_experiment();
    exp.trials = 2000;
    exp.snr_grid_db = {40.0};  // crossover underflows to zero
    const auto m = simulate_link(exp);
    REQUIRE(m.size() == 1);
    CHECK(m[0].syn_symbol_err == 0.0);
    CHECK(m[0].syn_sentence_err == 0.0);
    CHECK(m[0].sem_err == 0.0);
    CHECK(m[0].similarity == 1.0);
}

TEST_CASE("unstructured language: semantic equals syntactic sentence decoding") {
    Experiment exp;
    exp.language = build_sentence_language(fixtures::unstructured_grammar());
    exp.trials = 20000;
    exp.seed = 3;
    exp.snr_grid_db = {1.3};
    const auto m = simulate_link(exp);
    // With a bijective fixed-length code over the full product language
    // the MAP decoder reduces to per-word decoding, so the rates match
    // trial by trial, not just within the confidence interval.
    CHECK(m[0].sem_err == m[0].syn_sentence_err);
    CHECK(m[0].sem_err > 0.05);  // the point is noisy enough to matter
}

TEST_CASE("structured language: semantic decoding beats syntactic decoding") {
    Experiment exp = structured_experiment();
    exp.snr_grid_db = {1.3124};  // epsilon ~ 0.05
    const auto m = simulate_link(exp);
    const double gap = m[0].syn_sentence_err - m[0].sem_err;
    CHECK(gap > sigma3(m[0].syn_sentence_err, exp.trials) +
                    sigma3(m[0].sem_err, exp.trials));
}

TEST_CASE("similarity is monotone in SNR and saturates") {
    Experiment exp = structured_experiment();
    exp.codec.channel_code = ChannelCodeKind::hamming74;
    exp.trials = 10000;
    exp.snr_grid_db = {-6.0, -3.0, 0.0, 3.0, 6.0, 9.0, 12.0};
    const auto m = simulate_link(exp);
    REQUIRE(m.size() == 7);
    for (std::size_t i = 1; i < m.size(); ++i) {
        const double slack = m[i - 1].ci_half_width + m[i].ci_half_width;
        CHECK(m[i].similarity >= m[i - 1].similarity - slack);
    }
    // ~10 dB: epsilon below 1e-4, union bound over coded blocks leaves
    // similarity above 0.999.
    CHECK(m.back().similarity >= 0.999);

    // Semantic error never exceeds syntactic sentence error by more
    // than the statistical wobble, at any point.
    for (const auto& pt : m)
        CHECK(pt.sem_err <= pt.syn_sentence_err + sigma3(pt.syn_sentence_err, exp.trials) +
                                sigma3(pt.sem_err, exp.trials));
}

TEST_CASE("mismatched knowledge bases floor the semantic error rate") {
    Experiment exp = structured_experiment();
    exp.trials = 20000;
    exp.snr_grid_db = {40.0};

    // Destination reinterprets the first 16 sentences (prior mass 1/4).
    exp.kb_destination = exp.language.meaning_class;
    for (int i = 0; i < 16; ++i) exp.kb_destination[static_cast<std::size_t>(i)] += 1000;
    const auto m = simulate_link(exp);
    CHECK(m[0].syn_sentence_err == 0.0);  // channel is clean
    CHECK(m[0].sem_err == doctest::Approx(0.25).epsilon(0.1));
    CHECK(m[0].sem_err >= 0.25 - sigma3(0.25, exp.trials));

    // Full mismatch: every delivery is misinterpreted, exactly.
    for (auto& c : exp.kb_destination) c += 1;
    const auto full = simulate_link(exp);
    CHECK(full[0].sem_err == 1.0);
}

TEST_CASE("arq: clean channel never retransmits") {
    Experiment exp = structured_experiment();
    exp.trials = 2000;
    exp.snr_grid_db = {40.0};
    const auto m = simulate_arq(exp, 4);
    REQUIRE(m.size() == 1);
    CHECK(m[0].sem_retx_rate == 0.0);
    CHECK(m[0].syn_retx_rate == 0.0);
    CHECK(m[0].residual_sem_err == 0.0);
    CHECK(m[0].goodput > 0.0);
}

TEST_CASE("arq: tau zero disables semantic retransmission") {
    Experiment exp = structured_experiment();
    exp.trials = 5000;
    exp.tau = 0.0;
    exp.snr_grid_db = {1.3124};
    const auto once = simulate_arq(exp, 0);
    const auto budget = simulate_arq(exp, 4);
    CHECK(once[0].sem_retx_rate == 0.0);
    CHECK(budget[0].sem_retx_rate == 0.0);
    // Never retransmitting means the residual is the raw one-shot
    // semantic error rate, whatever the budget.
    CHECK(once[0].residual_sem_err == budget[0].residual_sem_err);
}

TEST_CASE("arq: semantic feedback asks for fewer retransmissions") {
    Experiment exp = structured_experiment();
    exp.trials = 10000;
    exp.codec.channel_code = ChannelCodeKind::hamming74;
    exp.snr_grid_db = {1.3124};  // epsilon ~ 0.05
    const auto m = simulate_arq(exp, 4);
    const double gap = m[0].syn_retx_rate - m[0].sem_retx_rate;
    CHECK(gap > 3.0 * std::sqrt(1.0 / exp.trials));  // conservative scale bound
    CHECK(m[0].residual_sem_err <= 0.01);
}

TEST_CASE("sweep csv: single point yields header plus one row, byte-stable") {
    Experiment exp = structured_experiment();
    exp.trials = 500;
    exp.snr_grid_db = {3.0};
    const std::string a = sweep_snr(exp);
    const std::string b = sweep_snr(exp);
    CHECK(a == b);
    CHECK(a.find("snr_db,trials,") == 0);
    std::size_t rows = 0;
    for (char ch : a)
        if (ch == '\n') ++rows;
    CHECK(rows == 2);

    const std::string arq_a = sweep_arq(exp, 2);
    const std::string arq_b = sweep_arq(exp, 2);
    CHECK(arq_a == arq_b);
}

TEST_CASE("rayleigh fading degrades the link but keeps the semantic ordering") {
    Experiment exp = structured_experiment();
    exp.trials = 10000;
    exp.fading = FadingProfile::Kind::rayleigh_block;
    exp.snr_grid_db = {8.0};
    const auto faded = simulate_link(exp)[0];

    exp.fading = FadingProfile::Kind::none;
    const auto fixed = simulate_link(exp)[0];

    CHECK(faded.sem_err > fixed.sem_err);  // fades hurt
    CHECK(faded.sem_err <=
          faded.syn_sentence_err + sigma3(faded.syn_sentence_err, exp.trials) +
              sigma3(faded.sem_err, exp.trials));
}

TEST_CASE("experiment validation") {
    Experiment exp = structured_experiment();
    exp.snr_grid_db = {};
    CHECK_THROWS_AS(check_valid(exp), config_error);
    exp = structured_experiment();
    exp.snr_grid_db = {1.0};
    exp.tau = 1.5;
    CHECK_THROWS_AS(check_valid(exp), config_error);
    exp = structured_experiment();
    exp.snr_grid_db = {1.0};
    exp.kb_destination = {1, 2, 3};
    CHECK_THROWS_AS(check_valid(exp), config_error);
}
