#pragma once

#include "iscc/channel.hpp"
#include "iscc/config.hpp"
#include "iscc/rng.hpp"

namespace iscc {

struct RateBreakdown {
    double gamma_user = 0.0;
    double gamma_eave1 = 0.0;
    double gamma_eave2 = 0.0;
    double gamma_eave = 0.0;
    double gamma_secure = 0.0;
    double p_interf[4] = {0, 0, 0, 0};
    double p_jam[3] = {0, 0, 0};
    double prelog = 0.0;
    double beta = 0.0;
};

/// Pre-log factor min(T_c_UAV - T_UAV, T_c_BS - T_BS) / (T_c_UAV + T_c_BS).
double prelog_factor(double t_c_uav, double t_c_bs, double t_uav, double t_bs);

/// max(0, gamma_user - (gamma_eave1 + gamma_eave2)/2).
double secrecy_from_parts(double gamma_user, double gamma_eave1, double gamma_eave2);

/// Monte-Carlo expectations of the rate chain that do not depend on the power
/// allocation. Computing these once per generation lets every candidate's
/// rates be assembled in closed form (common random numbers).
struct SecrecyStats {
    PrecoderStats precoder;
    int n_samples = 0;
    // user l = 1 (index 0)
    std::complex<double> mean_u;  // E[n_l M w_l]
    double mean_u_abs2 = 0.0;     // E[|n_l M w_l|^2]
    double mean_user_iui = 0.0;   // E[sum_{j!=l} |n_l M w_j|^2]
    double mean_user_an = 0.0;    // E[||n_l M Vn||^2]
    double mean_user_nl2 = 0.0;   // E[||n_l||^2]
    // eavesdropper, hop 1 (BS tap) -- receive combining over its array
    double mean_e1_sig = 0.0;     // E[||Q w_l||^2]
    double mean_e1_iui = 0.0;     // E[sum_{j!=l} ||Q w_j||^2]
    double mean_e1_an = 0.0;      // E[||Q Vn||_F^2]
    // eavesdropper, hop 2 (relay tap)
    double mean_e2_sig = 0.0;     // E[||Z M w_l||^2]
    double mean_e2_iui = 0.0;     // E[sum_{j!=l} ||Z M w_j||^2]
    double mean_e2_an = 0.0;      // E[||Z M Vn||_F^2]
    double mean_e2_z2 = 0.0;      // E[||Z||_F^2]
};

/// Draws n_samples joint channel realizations and accumulates every
/// expectation in the SINR chain. Deterministic given the rng seed.
SecrecyStats compute_secrecy_stats(const SystemConfig& cfg, int n_samples, Rng& rng);

/// Assembles the full rate breakdown for a power split from precomputed stats.
RateBreakdown rates_from_stats(const SecrecyStats& s, const SystemConfig& cfg, double p_com,
                               double p_an);

/// One-shot estimate at the config's default power split.
RateBreakdown estimate_rates(const SystemConfig& cfg, int n_samples, Rng& rng);
RateBreakdown estimate_rates(const SystemConfig& cfg, double p_com, double p_an, int n_samples,
                             Rng& rng);

}  // namespace iscc
