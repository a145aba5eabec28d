#pragma once

#include <tuple>

#include "iscc/rng.hpp"

namespace iscc {

/// Service rates of the two-hop compute/transmit pipeline.
struct QueueRates {
    double mu_bs = 1.0;     // BS computing rate, jobs/sec
    double mu_trans = 2.0;  // channel service rate (the secrecy rate)
    double mu_uav = 3.0;    // relay computing rate
};

/// Relative guard band around mu_trans == mu_bs where the closed form is
/// undefined.
constexpr double kRateSingularityRel = 1e-6;

bool rates_valid(const QueueRates& r);
bool rates_singular(const QueueRates& r);

/// Effective packet generation rate mu_bs mu_trans / (mu_bs + mu_trans).
double effective_arrival_rate(const QueueRates& r);

/// GI/M/1 stability: effective arrival rate < mu_uav.
bool gi_m_1_stable(const QueueRates& r);

/// The varpi_1..varpi_3 building blocks of the closed form.
std::tuple<double, double, double> varpi_terms(const QueueRates& r);

/// Laplace-Stieltjes transform of the inter-generation time B at s >= 0.
double interarrival_lst(const QueueRates& r, double s);

/// Root of upsilon = kappa*(mu_uav (1 - upsilon)) in (0, 1), solved by damped
/// fixed-point iteration to 1e-12 residual. Throws Instability when the queue
/// has no stationary regime.
double upsilon_fixed_point(const QueueRates& r);

/// (E[B], E[B^2], E[B B']) of the hypoexponential inter-generation time.
std::tuple<double, double, double> interarrival_moments(double mu_bs, double mu_trans);

/// Closed-form average age of information of the pipeline.
double closed_form_aaoi(const QueueRates& r);

struct AoITrace {
    long packets = 0;
    double average_aoi = 0.0;
    double mean_interarrival = 0.0;  // empirical E[B] over counted packets
    double horizon = 0.0;            // simulated time after warmup
};

/// Discrete-event oracle: zero-wait generation, exponential BS compute and
/// transmit stages, FCFS single-server relay queue. Warmup packets are
/// discarded before the sawtooth-area average.
AoITrace simulate_tandem_aoi(const QueueRates& r, long n_packets, long warmup, Rng& rng);

}  // namespace iscc
