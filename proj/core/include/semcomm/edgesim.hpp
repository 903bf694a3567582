#pragma once

#include <cstdint>
#include <vector>

#include "semcomm/channel.hpp"
#include "semcomm/rng.hpp"

namespace semcomm::edge {

/// Saturating accuracy-vs-bits curve for one learner:
/// accuracy(b) = max_accuracy * (1 - exp(-rate * b)).
struct LearnerCurve {
    double max_accuracy = 0.9;
    double rate = 0.5;

    double accuracy(int bits) const;
};

/// Sensor-to-edge-server pipeline configuration: per-slot sample
/// arrivals are quantized (bit depth b), radioed (power p) and
/// classified (cpu cycles f). The scheduler trades queue drift against
/// V * (energy + lambda * (1 - accuracy)).
struct EdgeConfig {
    double arrival_rate = 2.0;      // samples per slot (Poisson)
    double slot_duration = 1e-3;    // seconds
    std::vector<int> bit_options;
    std::vector<double> power_options;   // watts
    std::vector<double> cpu_options;     // cycles per slot
    FadingProfile channel;
    double bandwidth = 1e6;              // Hz
    double noise_power = 1.0;            // N0 in the rate law
    std::vector<LearnerCurve> accuracy_curves;
    double cycles_per_sample = 100.0;
    double delay_constraint = 20.0;      // slots, average (reporting only)
    double V = 1.0;                      // drift-vs-penalty weight
    double lambda = 1.0;                 // accuracy weight inside the penalty
    double kappa = 1e-9;                 // cpu energy coefficient (kappa f^3 tau)
    double confidence_noise = 0.05;      // ensemble confidence jitter
    long horizon = 10000;                // slots
};

void check_valid(const EdgeConfig& config);

struct Control {
    int bits = 0;
    double power = 0.0;
    double cpu = 0.0;
};

struct SlotRecord {
    long slot = 0;
    long arrivals = 0;
    double fade_snr = 0.0;
    Control choice;
    double tx_bits = 0.0;
    double airtime = 0.0;       // seconds spent transmitting
    double energy = 0.0;        // joules this slot
    double comm_queue_bits = 0.0;
    double comm_queue_samples = 0.0;
    double comp_queue_samples = 0.0;
    int learner = 0;
    double accuracy = 0.0;      // selected learner at this slot's bit depth
};

/// Queue backlogs and accumulated statistics. The communication queue
/// is tracked both in bits and in samples (fluid drain keeps the two in
/// proportion) so Little's law gives a delay readout in slots.
struct SimState {
    double comm_bits = 0.0;
    double comm_samples = 0.0;
    double comp_samples = 0.0;
    double total_energy = 0.0;
    long slots = 0;
};

/// Shannon-rate service for a power choice under the current fade.
double service_rate(const EdgeConfig& config, double power, double fade_snr);

/// Drift-plus-penalty argmin over the (bits, power, cpu) grid for the
/// observed arrivals and fade. Deterministic tie-breaking by option
/// order.
Control choose_control(const SimState& state, const EdgeConfig& config, long arrivals,
                       double fade_snr);

/// Advances one slot: draw arrivals and fade, pick controls, move
/// fluid through both queues, account energy, run the ensemble.
SlotRecord step(SimState& state, const EdgeConfig& config, Rng& rng);

struct RunSummary {
    double avg_delay = 0.0;            // slots, Little's law on total backlog
    double avg_energy_per_slot = 0.0;  // joules
    double avg_accuracy = 0.0;         // arrival-weighted
    bool stable = true;
    bool meets_delay_constraint = true;
    double total_energy = 0.0;
};

RunSummary run(const EdgeConfig& config, std::uint64_t seed,
               std::vector<SlotRecord>* trace = nullptr);

/// Minimum-output-entropy learner pick; ties go to the lowest index.
/// The entropy heuristic stands in for unobservable correctness.
int ensemble_select(const std::vector<std::vector<double>>& confidences);

/// Federated objective over quadratic device losses
/// f_i(w) = (a_i / 2) ||w - c_i||^2 with example-count weights
/// p_i = n_i / sum_j n_j.
struct FedConfig {
    std::vector<std::vector<double>> centers;  // c_i
    std::vector<double> curvatures;            // a_i > 0
    std::vector<double> example_counts;        // n_i
    int rounds = 500;
    double step_size = 0.1;
};

void check_valid(const FedConfig& config);

std::vector<double> fed_weights(const FedConfig& config);

/// Closed-form minimizer of sum_i p_i f_i: weighted center mean with
/// weights p_i a_i.
std::vector<double> fed_optimum(const FedConfig& config);

struct FedResult {
    std::vector<double> w_final;
    std::vector<double> objective_trace;  // per round
    std::vector<double> error_trace;      // ||w_t - w*|| per round
    bool converged = false;
};

/// One local gradient step per device per round from the shared
/// iterate, then example-weighted averaging at the center.
FedResult fedavg(const FedConfig& config, std::vector<double> w0);

}  // namespace semcomm::edge
