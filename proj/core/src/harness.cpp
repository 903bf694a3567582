#include "semcomm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "semcomm/csv.hpp"
#include "semcomm/rng.hpp"

namespace semcomm::link {

namespace {

struct Context {
    const Experiment& exp;
    LinkCodec codec;
    SemanticDecoder decoder;
    std::vector<ClassId> kb_dst;

    explicit Context(const Experiment& e)
        : exp(e), codec(e.language, e.codec), decoder(e.language, codec) {
        kb_dst = e.kb_destination.empty() ? e.language.meaning_class : e.kb_destination;
    }
};

struct Channelled {
    Bits y;
    std::vector<double> eps_per_bit;  // empty when the crossover is uniform
    double eps_uniform = 0.0;
};

/// Pushes an encoding through the point's channel. Fading resets at
/// sentence boundaries; within a sentence the crossover is redrawn
/// every fade_block_bits bits.
Channelled pass_through(const Context& ctx, const Bits& x, double snr_linear, Rng& rng) {
    Channelled out;
    out.y = x;
    if (ctx.exp.fading == FadingProfile::Kind::none) {
        out.eps_uniform = snr_to_crossover(snr_linear);
        for (auto& b : out.y)
            if (rng.bernoulli(out.eps_uniform)) b ^= 1;
        return out;
    }
    out.eps_per_bit.resize(x.size());
    double eps = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i % static_cast<std::size_t>(ctx.exp.fade_block_bits) == 0)
            eps = snr_to_crossover(rng.exponential(snr_linear));
        out.eps_per_bit[i] = eps;
        if (rng.bernoulli(eps)) out.y[i] ^= 1;
    }
    return out;
}

DecodeResult semantic_decode(const Context& ctx, const Channelled& ch) {
    return ch.eps_per_bit.empty() ? ctx.decoder.decode(ch.y, ch.eps_uniform)
                                  : ctx.decoder.decode(ch.y, ch.eps_per_bit);
}

int count_word_errors(const std::vector<int>& decoded, const std::vector<int>& truth) {
    int errors = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (i >= decoded.size() || decoded[i] != truth[i]) ++errors;
    return errors;
}

struct LinkCounters {
    long word_errors = 0;
    long sentence_errors = 0;
    long semantic_errors = 0;

    void operator+=(const LinkCounters& o) {
        word_errors += o.word_errors;
        sentence_errors += o.sentence_errors;
        semantic_errors += o.semantic_errors;
    }
};

struct ArqCounters {
    long sem_retx = 0;
    long syn_retx = 0;
    long residual_sem_errors = 0;
    long meaning_correct = 0;
    long channel_uses = 0;  // bits sent by the semantic scheme

    void operator+=(const ArqCounters& o) {
        sem_retx += o.sem_retx;
        syn_retx += o.syn_retx;
        residual_sem_errors += o.residual_sem_errors;
        meaning_correct += o.meaning_correct;
        channel_uses += o.channel_uses;
    }
};

template <typename Counters, typename TrialFn>
Counters parallel_accumulate(long trials, TrialFn&& fn) {
    const int workers = std::min<long>(worker_count(), trials);
    std::vector<Counters> partial(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long t = w; t < trials; t += workers) fn(t, partial[static_cast<std::size_t>(w)]);
        });
    }
    for (auto& th : pool) th.join();
    Counters total;
    for (const auto& p : partial) total += p;
    return total;
}

void run_link_trial(const Context& ctx, double snr_linear, std::uint64_t point_seed, long trial,
                    LinkCounters& counters) {
    Rng rng(derive_seed(point_seed, static_cast<std::uint64_t>(trial)));
    const auto s = rng.discrete(ctx.exp.language.prior);
    const auto& truth = ctx.exp.language.sentences[s];

    const Channelled ch = pass_through(ctx, ctx.decoder.encoding(static_cast<int>(s)),
                                       snr_linear, rng);
    const SyntacticDecode sd = ctx.codec.syntactic_decode(ch.y);
    const DecodeResult sem = semantic_decode(ctx, ch);

    counters.word_errors += count_word_errors(sd.words, truth);
    if (sd.words != truth) ++counters.sentence_errors;
    if (ctx.kb_dst[static_cast<std::size_t>(sem.message_hat)] !=
        ctx.exp.language.meaning_class[s])
        ++counters.semantic_errors;
}

void run_arq_trial(const Context& ctx, double snr_linear, std::uint64_t point_seed, long trial,
                   int max_retx, ArqCounters& counters) {
    const std::uint64_t base = derive_seed(point_seed, static_cast<std::uint64_t>(trial));
    Rng pick(derive_seed(base, 0));
    const auto s = pick.discrete(ctx.exp.language.prior);
    const auto& truth = ctx.exp.language.sentences[s];
    const Bits& x = ctx.decoder.encoding(static_cast<int>(s));

    // Semantic feedback scheme.
    {
        Rng rng(derive_seed(base, 1));
        for (int attempt = 0;; ++attempt) {
            const Channelled ch = pass_through(ctx, x, snr_linear, rng);
            counters.channel_uses += static_cast<long>(x.size());
            DecodeResult result = semantic_decode(ctx, ch);
            result.syntactic_words = ctx.codec.syntactic_decode(ch.y).words;
            const bool retransmit =
                semantic_error_detect(result, ctx.exp.language, ctx.exp.tau) &&
                attempt < max_retx;
            if (!retransmit) {
                const bool correct =
                    ctx.kb_dst[static_cast<std::size_t>(result.message_hat)] ==
                    ctx.exp.language.meaning_class[s];
                if (correct)
                    ++counters.meaning_correct;
                else
                    ++counters.residual_sem_errors;
                break;
            }
            ++counters.sem_retx;
        }
    }

    // Genie syntactic ARQ: retransmit on any symbol error.
    {
        Rng rng(derive_seed(base, 2));
        for (int attempt = 0;; ++attempt) {
            const Channelled ch = pass_through(ctx, x, snr_linear, rng);
            const SyntacticDecode sd = ctx.codec.syntactic_decode(ch.y);
            if (sd.words == truth || attempt >= max_retx) break;
            ++counters.syn_retx;
        }
    }
}

}  // namespace

void check_valid(const Experiment& exp) {
    check_valid(exp.language);
    check_valid(exp.codec);
    if (exp.snr_grid_db.empty()) throw config_error("Experiment: empty SNR grid");
    if (exp.trials < 1) throw config_error("Experiment: trials must be >= 1");
    if (!(exp.tau >= 0.0 && exp.tau <= 1.0))
        throw config_error("Experiment: tau must lie in [0, 1]");
    if (!exp.kb_destination.empty() &&
        exp.kb_destination.size() != exp.language.sentences.size())
        throw config_error("Experiment: kb_destination size does not match sentence count");
    if (exp.fade_block_bits < 1) throw config_error("Experiment: fade_block_bits must be >= 1");
}

int worker_count() {
    if (const char* env = std::getenv("SEMCOMM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hc, 1u, 8u));
}

std::vector<Metrics> simulate_link(const Experiment& exp) {
    check_valid(exp);
    const Context ctx(exp);
    std::vector<Metrics> out;
    out.reserve(exp.snr_grid_db.size());
    for (std::size_t point = 0; point < exp.snr_grid_db.size(); ++point) {
        const double snr_db = exp.snr_grid_db[point];
        const double snr_linear = snr_db_to_linear(snr_db);
        const std::uint64_t point_seed = derive_seed(exp.seed, point);
        const LinkCounters totals = parallel_accumulate<LinkCounters>(
            exp.trials, [&](long trial, LinkCounters& c) {
                run_link_trial(ctx, snr_linear, point_seed, trial, c);
            });

        Metrics m;
        m.snr_db = snr_db;
        m.trials = exp.trials;
        const double n = static_cast<double>(exp.trials);
        m.syn_symbol_err = static_cast<double>(totals.word_errors) /
                           (n * static_cast<double>(exp.language.length));
        m.syn_sentence_err = static_cast<double>(totals.sentence_errors) / n;
        m.sem_err = static_cast<double>(totals.semantic_errors) / n;
        m.similarity = 1.0 - m.sem_err;
        // Normal approximation with continuity correction.
        m.ci_half_width = 1.96 * std::sqrt(m.sem_err * (1.0 - m.sem_err) / n) + 0.5 / n;
        out.push_back(m);
    }
    return out;
}

std::vector<ArqMetrics> simulate_arq(const Experiment& exp, int max_retx) {
    check_valid(exp);
    if (max_retx < 0) throw config_error("simulate_arq: max_retx must be >= 0");
    const Context ctx(exp);
    std::vector<ArqMetrics> out;
    out.reserve(exp.snr_grid_db.size());
    for (std::size_t point = 0; point < exp.snr_grid_db.size(); ++point) {
        const double snr_db = exp.snr_grid_db[point];
        const double snr_linear = snr_db_to_linear(snr_db);
        const std::uint64_t point_seed = derive_seed(exp.seed, 0x41525100ULL + point);
        const ArqCounters totals = parallel_accumulate<ArqCounters>(
            exp.trials, [&](long trial, ArqCounters& c) {
                run_arq_trial(ctx, snr_linear, point_seed, trial, max_retx, c);
            });

        ArqMetrics m;
        m.snr_db = snr_db;
        const double n = static_cast<double>(exp.trials);
        m.sem_retx_rate = static_cast<double>(totals.sem_retx) / n;
        m.syn_retx_rate = static_cast<double>(totals.syn_retx) / n;
        m.residual_sem_err = static_cast<double>(totals.residual_sem_errors) / n;
        m.goodput = totals.channel_uses > 0
                        ? static_cast<double>(totals.meaning_correct) /
                              static_cast<double>(totals.channel_uses)
                        : 0.0;
        out.push_back(m);
    }
    return out;
}

std::string sweep_snr(const Experiment& exp) {
    std::string csv = "snr_db,trials,syn_symbol_err,syn_sentence_err,sem_err,similarity,ci_half_width\n";
    for (const Metrics& m : simulate_link(exp)) {
        csv += csv_row({format_number(m.snr_db), format_number(m.trials),
                        format_number(m.syn_symbol_err), format_number(m.syn_sentence_err),
                        format_number(m.sem_err), format_number(m.similarity),
                        format_number(m.ci_half_width)});
    }
    return csv;
}

std::string sweep_arq(const Experiment& exp, int max_retx) {
    std::string csv = "snr_db,sem_retx_rate,syn_retx_rate,residual_sem_err,goodput\n";
    for (const ArqMetrics& m : simulate_arq(exp, max_retx)) {
        csv += csv_row({format_number(m.snr_db), format_number(m.sem_retx_rate),
                        format_number(m.syn_retx_rate), format_number(m.residual_sem_err),
                        format_number(m.goodput)});
    }
    return csv;
}

}  // namespace semcomm::link
