#include "iscc/aoi.hpp"

#include <algorithm>
#include <cmath>

#include "iscc/errors.hpp"

namespace iscc {

bool rates_valid(const QueueRates& r) {
    return r.mu_bs > 0.0 && r.mu_trans > 0.0 && r.mu_uav > 0.0;
}

bool rates_singular(const QueueRates& r) {
    double guard = kRateSingularityRel * std::max(r.mu_bs, r.mu_trans);
    return std::abs(r.mu_trans - r.mu_bs) <= guard;
}

double effective_arrival_rate(const QueueRates& r) {
    return r.mu_bs * r.mu_trans / (r.mu_bs + r.mu_trans);
}

bool gi_m_1_stable(const QueueRates& r) { return effective_arrival_rate(r) < r.mu_uav; }

namespace {
void check_rates(const QueueRates& r) {
    if (!rates_valid(r)) throw InvalidParameter("queue rates must be positive");
    if (rates_singular(r))
        throw Instability("mu_trans == mu_bs is a singular point of the closed form");
}
}  // namespace

std::tuple<double, double, double> varpi_terms(const QueueRates& r) {
    check_rates(r);
    double mb = r.mu_bs, mt = r.mu_trans, mu = r.mu_uav;
    double w1 = mu * mt / ((mt - mb) * (mb + mu));
    double w2 = mb * mt / ((mt - mb) * (mt + mu));
    double w3 = 0.5 * (mu - (mb + mt) + std::sqrt((mu - mt + mb) * (mu - mt + mb) + 4.0 * mt * mu));
    return {w1, w2, w3};
}

double interarrival_lst(const QueueRates& r, double s) {
    check_rates(r);
    double mb = r.mu_bs, mt = r.mu_trans;
    // product form of the hypoexponential transform: algebraically equal to the
    // partial-fraction expansion but exact (== 1) at s = 0
    return (mb / (mb + s)) * (mt / (mt + s));
}

double upsilon_fixed_point(const QueueRates& r) {
    check_rates(r);
    if (!gi_m_1_stable(r)) throw Instability("no stationary root: arrival rate >= mu_uav");
    double u = 0.5;
    const double damping = 0.5;
    for (int it = 0; it < 100000; ++it) {
        double next = interarrival_lst(r, r.mu_uav * (1.0 - u));
        next = std::clamp(next, 0.0, 1.0 - 1e-15);
        double residual = std::abs(next - u);
        u = damping * u + (1.0 - damping) * next;
        if (residual < 1e-12) return u;
    }
    throw Instability("upsilon fixed point did not converge");
}

std::tuple<double, double, double> interarrival_moments(double mu_bs, double mu_trans) {
    if (!(mu_bs > 0.0) || !(mu_trans > 0.0))
        throw InvalidParameter("interarrival rates must be positive");
    double eb = 1.0 / mu_bs + 1.0 / mu_trans;
    double eb2 = 2.0 / (mu_bs * mu_bs) + 2.0 / (mu_trans * mu_trans) + 2.0 / (mu_bs * mu_trans);
    return {eb, eb2, eb * eb};
}

double closed_form_aaoi(const QueueRates& r) {
    // AAoI = lambda (E[B^2]/2 + E[T B'] + E[B B']) with the stationary GI/M/1
    // system time T ~ Exp(w3) and hypoexponential interarrivals. The waiting
    // time cross-moment conditions on the preceding interarrival:
    //   E[Wa | B' = k] = W0 + coef * exp(-w3 k),
    //   W0   = kappa*(mu_uav) / mu_uav,
    //   coef = (kappa*(mu_uav) - mu_uav upsilon / w3) / (w3 - mu_uav),
    // and E[B' exp(-w3 B')] = -d kappa*/ds at w3.
    auto [w1, w2, w3] = varpi_terms(r);
    (void)w1;
    (void)w2;
    if (!gi_m_1_stable(r)) throw Instability("closed form needs a stable relay queue");
    double mb = r.mu_bs, mt = r.mu_trans, mu = r.mu_uav;
    auto [eb, eb2, ebb] = interarrival_moments(mb, mt);
    double lambda = 1.0 / eb;
    double k_mu = interarrival_lst(r, mu);
    double upsilon = 1.0 - w3 / mu;  // fixed-point identity w3 = mu (1 - upsilon)
    double w0 = k_mu / mu;
    double coef = (k_mu - mu * upsilon / w3) / (w3 - mu);
    double lst_slope = mb * mt / (mt - mb) *
                       (1.0 / ((mb + w3) * (mb + w3)) - 1.0 / ((mt + w3) * (mt + w3)));
    double aaoi = lambda * (0.5 * eb2 + ebb) + 1.0 / mu + w0 + lambda * coef * lst_slope;
    if (!std::isfinite(aaoi) || aaoi <= 0.0)
        throw Instability("closed-form average AoI is not finite and positive");
    return aaoi;
}

AoITrace simulate_tandem_aoi(const QueueRates& r, long n_packets, long warmup, Rng& rng) {
    if (!rates_valid(r)) throw InvalidParameter("queue rates must be positive");
    if (!gi_m_1_stable(r)) throw Instability("unstable rates: arrival rate >= mu_uav");
    if (n_packets < 1000) throw InvalidParameter("simulate_tandem_aoi needs >= 1000 packets");
    if (warmup < 0 || warmup >= n_packets) throw InvalidParameter("bad warmup packet count");

    double birth = 0.0;          // b_i, generation time of the current packet
    double server_free = 0.0;    // completion time of the previous packet
    double prev_birth = 0.0;     // b_{i-1}
    double prev_done = 0.0;      // t'_{i-1}
    double area = 0.0;
    double span_start = 0.0;
    double interarrival_acc = 0.0;
    long counted = 0;

    for (long i = 0; i < n_packets; ++i) {
        double o = rng.exponential(r.mu_bs);
        double y = rng.exponential(r.mu_trans);
        double arrive = birth + o + y;               // t_i, arrival at the relay queue
        double start = std::max(arrive, server_free);
        double done = start + rng.exponential(r.mu_uav);  // t'_i
        server_free = done;

        if (i >= warmup && i > 0) {
            // Sawtooth area between deliveries i-1 and i: age rises linearly
            // from done_{i-1} - b_{i-1}, and resets at done_i to done_i - b_i.
            double a0 = prev_done - prev_birth;
            double a1 = done - prev_birth;
            area += 0.5 * (a1 * a1 - a0 * a0);
            interarrival_acc += birth - prev_birth;
            ++counted;
            if (counted == 1) span_start = prev_done;
        }

        prev_birth = birth;
        prev_done = done;
        birth = arrive;  // zero-wait: next generation at the arrival instant
    }

    AoITrace trace;
    trace.packets = counted;
    trace.horizon = prev_done - span_start;
    trace.average_aoi = trace.horizon > 0.0 ? area / trace.horizon : 0.0;
    trace.mean_interarrival = counted > 0 ? interarrival_acc / counted : 0.0;
    return trace;
}

}  // namespace iscc
