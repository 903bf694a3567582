#include "semcomm/edgesim.hpp"

#include <algorithm>
#include <cmath>

#include "semcomm/measures.hpp"

namespace semcomm::edge {

double LearnerCurve::accuracy(int bits) const {
    return max_accuracy * (1.0 - std::exp(-rate * static_cast<double>(bits)));
}

void check_valid(const EdgeConfig& config) {
    if (!(config.arrival_rate >= 0.0)) throw config_error("EdgeConfig: arrival_rate must be >= 0");
    if (!(config.slot_duration > 0.0)) throw config_error("EdgeConfig: slot_duration must be > 0");
    if (config.bit_options.empty() || config.power_options.empty() || config.cpu_options.empty())
        throw config_error("EdgeConfig: option lists must be nonempty");
    for (int b : config.bit_options)
        if (b < 1) throw config_error("EdgeConfig: bit options must be >= 1");
    for (double p : config.power_options)
        if (!(p >= 0.0)) throw config_error("EdgeConfig: power options must be >= 0");
    for (double f : config.cpu_options)
        if (!(f >= 0.0)) throw config_error("EdgeConfig: cpu options must be >= 0");
    if (config.accuracy_curves.empty()) throw config_error("EdgeConfig: no accuracy curves");
    for (const auto& c : config.accuracy_curves)
        if (!(c.max_accuracy > 0.0 && c.max_accuracy <= 1.0 && c.rate > 0.0))
            throw config_error("EdgeConfig: accuracy curve parameters out of range");
    if (!(config.bandwidth > 0.0)) throw config_error("EdgeConfig: bandwidth must be > 0");
    if (!(config.noise_power > 0.0)) throw config_error("EdgeConfig: noise_power must be > 0");
    if (!(config.cycles_per_sample > 0.0))
        throw config_error("EdgeConfig: cycles_per_sample must be > 0");
    if (!(config.V >= 0.0)) throw config_error("EdgeConfig: V must be >= 0");
    if (!(config.lambda >= 0.0)) throw config_error("EdgeConfig: lambda must be >= 0");
    if (!(config.kappa >= 0.0)) throw config_error("EdgeConfig: kappa must be >= 0");
    if (config.horizon < 1) throw config_error("EdgeConfig: horizon must be >= 1");
    check_valid(config.channel);
}

double service_rate(const EdgeConfig& config, double power, double fade_snr) {
    return config.bandwidth * std::log2(1.0 + power * fade_snr / config.noise_power);
}

namespace {

double best_accuracy(const EdgeConfig& config, int bits) {
    double best = 0.0;
    for (const auto& c : config.accuracy_curves) best = std::max(best, c.accuracy(bits));
    return best;
}

// Bits-per-sample scale that puts the two queues on comparable footing
// inside the quadratic Lyapunov function.
double sample_weight(const EdgeConfig& config) {
    double mean = 0.0;
    for (int b : config.bit_options) mean += static_cast<double>(b);
    mean /= static_cast<double>(config.bit_options.size());
    return mean * mean;
}

struct Outcome {
    double comm_bits, comm_samples, comp_samples;
    double tx, airtime, energy;
};

Outcome apply_control(const SimState& state, const EdgeConfig& config, long arrivals,
                      double fade_snr, const Control& ctrl) {
    Outcome o{};
    const double in_bits = static_cast<double>(arrivals) * ctrl.bits;
    double qbits = state.comm_bits + in_bits;
    double qsamples = state.comm_samples + static_cast<double>(arrivals);

    const double rate = service_rate(config, ctrl.power, fade_snr);
    o.tx = std::min(qbits, rate * config.slot_duration);
    const double frac = qbits > 0.0 ? o.tx / qbits : 0.0;
    const double moved = qsamples * frac;
    o.comm_bits = qbits - o.tx;
    o.comm_samples = qsamples - moved;

    double qcomp = state.comp_samples + moved;
    const double served =
        std::min(qcomp, ctrl.cpu / config.cycles_per_sample);
    o.comp_samples = qcomp - served;

    o.airtime = rate > 0.0 ? o.tx / rate : 0.0;
    o.energy = ctrl.power * o.airtime +
               config.kappa * ctrl.cpu * ctrl.cpu * ctrl.cpu * config.slot_duration;
    return o;
}

}  // namespace

Control choose_control(const SimState& state, const EdgeConfig& config, long arrivals,
                       double fade_snr) {
    const double wsq = sample_weight(config);
    Control best{};
    double best_obj = 0.0;
    bool first = true;
    for (int b : config.bit_options) {
        const double acc_pen = config.lambda * (1.0 - best_accuracy(config, b));
        for (double p : config.power_options) {
            for (double f : config.cpu_options) {
                const Control ctrl{b, p, f};
                const Outcome o = apply_control(state, config, arrivals, fade_snr, ctrl);
                const double drift =
                    0.5 * (o.comm_bits * o.comm_bits - state.comm_bits * state.comm_bits) +
                    0.5 * wsq *
                        (o.comp_samples * o.comp_samples - state.comp_samples * state.comp_samples);
                const double obj = drift + config.V * (o.energy + acc_pen);
                if (first || obj < best_obj) {
                    best_obj = obj;
                    best = ctrl;
                    first = false;
                }
            }
        }
    }
    return best;
}

SlotRecord step(SimState& state, const EdgeConfig& config, Rng& rng) {
    SlotRecord rec;
    rec.slot = state.slots;
    rec.arrivals = rng.poisson(config.arrival_rate);
    rec.fade_snr = draw_block_snr(config.channel, rng);
    rec.choice = choose_control(state, config, rec.arrivals, rec.fade_snr);

    const Outcome o = apply_control(state, config, rec.arrivals, rec.fade_snr, rec.choice);
    state.comm_bits = o.comm_bits;
    state.comm_samples = o.comm_samples;
    state.comp_samples = o.comp_samples;
    state.total_energy += o.energy;
    ++state.slots;

    rec.tx_bits = o.tx;
    rec.airtime = o.airtime;
    rec.energy = o.energy;
    rec.comm_queue_bits = state.comm_bits;
    rec.comm_queue_samples = state.comm_samples;
    rec.comp_queue_samples = state.comp_samples;

    // Ensemble switch on synthesized confidences; correctness itself is
    // not observable online, so only output entropy drives the pick.
    std::vector<std::vector<double>> confidences;
    confidences.reserve(config.accuracy_curves.size());
    for (const auto& curve : config.accuracy_curves) {
        const double jitter = config.confidence_noise * (2.0 * rng.next_double() - 1.0);
        const double q =
            std::clamp(curve.accuracy(rec.choice.bits) + jitter, 0.5, 1.0 - 1e-12);
        confidences.push_back({q, 1.0 - q});
    }
    rec.learner = ensemble_select(confidences);
    rec.accuracy = config.accuracy_curves[static_cast<std::size_t>(rec.learner)].accuracy(
        rec.choice.bits);
    return rec;
}

RunSummary run(const EdgeConfig& config, std::uint64_t seed, std::vector<SlotRecord>* trace) {
    check_valid(config);
    if (config.horizon < 1000) throw config_error("edge::run: horizon must be >= 1000 slots");
    Rng rng(seed);
    SimState state;

    const long burn_in = config.horizon / 10;
    double backlog_sum = 0.0, energy_sum = 0.0;
    double acc_weighted = 0.0;
    long arrivals_total = 0, counted = 0;

    std::vector<double> backlog_trace;
    backlog_trace.reserve(static_cast<std::size_t>(config.horizon));

    for (long t = 0; t < config.horizon; ++t) {
        const SlotRecord rec = step(state, config, rng);
        if (trace) trace->push_back(rec);
        backlog_trace.push_back(rec.comm_queue_samples + rec.comp_queue_samples);
        if (t >= burn_in) {
            backlog_sum += rec.comm_queue_samples + rec.comp_queue_samples;
            energy_sum += rec.energy;
            acc_weighted += static_cast<double>(rec.arrivals) * rec.accuracy;
            arrivals_total += rec.arrivals;
            ++counted;
        }
    }

    RunSummary s;
    s.total_energy = state.total_energy;
    s.avg_energy_per_slot = counted > 0 ? energy_sum / static_cast<double>(counted) : 0.0;
    const double mean_backlog = counted > 0 ? backlog_sum / static_cast<double>(counted) : 0.0;
    s.avg_delay = config.arrival_rate > 0.0 ? mean_backlog / config.arrival_rate : 0.0;
    s.avg_accuracy =
        arrivals_total > 0 ? acc_weighted / static_cast<double>(arrivals_total) : 0.0;
    s.meets_delay_constraint = s.avg_delay <= config.delay_constraint;

    // Least-squares slope of total backlog over the last half: an
    // unstable queue grows linearly, a stable one hovers.
    const std::size_t n = backlog_trace.size();
    const std::size_t from = n / 2;
    const std::size_t m = n - from;
    double tbar = 0.0, ybar = 0.0;
    for (std::size_t i = from; i < n; ++i) {
        tbar += static_cast<double>(i);
        ybar += backlog_trace[i];
    }
    tbar /= static_cast<double>(m);
    ybar /= static_cast<double>(m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = from; i < n; ++i) {
        const double dt = static_cast<double>(i) - tbar;
        num += dt * (backlog_trace[i] - ybar);
        den += dt * dt;
    }
    const double slope = den > 0.0 ? num / den : 0.0;
    s.stable = slope <= 0.02 * config.arrival_rate + 1e-9;
    return s;
}

int ensemble_select(const std::vector<std::vector<double>>& confidences) {
    if (confidences.empty()) throw config_error("ensemble_select: no learners");
    int best = 0;
    double best_entropy = 0.0;
    for (std::size_t i = 0; i < confidences.size(); ++i) {
        check_distribution(confidences[i], "ensemble_select.confidence", 1e-9);
        const double h = entropy_bits(confidences[i]);
        if (i == 0 || h < best_entropy) {
            best_entropy = h;
            best = static_cast<int>(i);
        }
    }
    return best;
}

void check_valid(const FedConfig& config) {
    const std::size_t n = config.centers.size();
    if (n == 0) throw config_error("FedConfig: no devices");
    if (config.curvatures.size() != n || config.example_counts.size() != n)
        throw config_error("FedConfig: per-device field size mismatch");
    const std::size_t dim = config.centers.front().size();
    for (const auto& c : config.centers)
        if (c.size() != dim || dim == 0) throw config_error("FedConfig: center dimension mismatch");
    for (double a : config.curvatures)
        if (!(a > 0.0)) throw config_error("FedConfig: curvatures must be > 0");
    double total = 0.0;
    for (double cnt : config.example_counts) {
        if (!(cnt > 0.0)) throw config_error("FedConfig: example counts must be > 0");
        total += cnt;
    }
    if (!(total > 0.0)) throw config_error("FedConfig: zero total examples");
    if (config.rounds < 1) throw config_error("FedConfig: rounds must be >= 1");
    if (!(config.step_size > 0.0)) throw config_error("FedConfig: step size must be > 0");
}

std::vector<double> fed_weights(const FedConfig& config) {
    double total = 0.0;
    for (double n : config.example_counts) total += n;
    std::vector<double> p(config.example_counts.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = config.example_counts[i] / total;
    return p;
}

std::vector<double> fed_optimum(const FedConfig& config) {
    const auto p = fed_weights(config);
    const std::size_t dim = config.centers.front().size();
    std::vector<double> w(dim, 0.0);
    double norm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pa = p[i] * config.curvatures[i];
        norm += pa;
        for (std::size_t d = 0; d < dim; ++d) w[d] += pa * config.centers[i][d];
    }
    for (double& v : w) v /= norm;
    return w;
}

FedResult fedavg(const FedConfig& config, std::vector<double> w0) {
    check_valid(config);
    const std::size_t dim = config.centers.front().size();
    if (w0.size() != dim) throw config_error("fedavg: initial point dimension mismatch");

    const auto p = fed_weights(config);
    const auto opt = fed_optimum(config);
    FedResult res;
    std::vector<double> w = std::move(w0);

    auto objective = [&](const std::vector<double>& x) {
        double f = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            double sq = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = x[d] - config.centers[i][d];
                sq += diff * diff;
            }
            f += p[i] * 0.5 * config.curvatures[i] * sq;
        }
        return f;
    };
    auto err = [&](const std::vector<double>& x) {
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double diff = x[d] - opt[d];
            sq += diff * diff;
        }
        return std::sqrt(sq);
    };

    std::vector<double> next(dim);
    for (int round = 0; round < config.rounds; ++round) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
            // Device i: one gradient step on (a_i/2)||w - c_i||^2.
            for (std::size_t d = 0; d < dim; ++d) {
                const double local =
                    w[d] - config.step_size * config.curvatures[i] * (w[d] - config.centers[i][d]);
                next[d] += p[i] * local;
            }
        }
        w = next;
        res.objective_trace.push_back(objective(w));
        res.error_trace.push_back(err(w));
        if (!std::isfinite(res.error_trace.back())) break;
    }

    res.converged = !res.error_trace.empty() && res.error_trace.back() <= 1e-6;
    res.w_final = std::move(w);
    return res;
}

}  // namespace semcomm::edge
