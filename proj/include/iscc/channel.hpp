#pragma once

#include <Eigen/Dense>
#include <vector>

#include "iscc/config.hpp"
#include "iscc/rng.hpp"

namespace iscc {

using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Channel gain from a path-loss spec: (dis/dis_ref)^(-L_e). Decays with
/// distance; equals 1 at the reference distance.
double pathloss_gain(const PathLossSpec& spec);

/// Rayleigh channel draw: row i entries are i.i.d. CN(0, pathloss_diag[i]).
ComplexMatrix draw_channel(int rows, int cols, const RealVector& pathloss_diag, Rng& rng);

/// MMSE estimate F(F + I/(T P))^-1 (C + A/sqrt(T P)) with per-row gains F and
/// fresh standard complex Gaussian pilot noise A.
ComplexMatrix mmse_estimate(const ComplexMatrix& c_true, const RealVector& gains,
                            const PilotSpec& pilot, Rng& rng);

/// Residual estimation quality: eps^2 / (eps + 1/(T P)).
double error_stats(double gain, const PilotSpec& pilot);

/// Zero-forcing precoder W_c = alpha H^H (H H^H)^-1 for H = NM_hat.
/// Throws SingularChannel when H H^H is ill conditioned (cond > 1e12).
ComplexMatrix zf_precoder(const ComplexMatrix& nm_hat, double alpha);

/// alpha = 1 / sqrt(mean over draws of Tr((H H^H)^-1)).
double normalization_alpha(const std::vector<ComplexMatrix>& nm_hat_draws);

/// Null-space projector D = I - H^H (H H^H)^-1 H of size n_bs x n_bs.
ComplexMatrix an_projector(const ComplexMatrix& nm_hat);

/// AN shaper: first n_uav columns of the projector, scaled by
/// 1/sqrt(expected_trace). With expected_trace <= 0 the draw's own trace is
/// used, so Tr(V V^H) = 1 exactly (single-draw normalization mode).
ComplexMatrix an_shaper(const ComplexMatrix& nm_hat, int n_uav, double expected_trace = -1.0);

/// Relay amplification beta assembled from Monte-Carlo denominator traces:
/// beta = sqrt(P_UAV / (P_com E[Tr(M Wc (M Wc)^H)]
///                     + P_AN sigma_z^2 E[Tr(M Vn (M Vn)^H)]
///                     + N_UAV sigma_UAV^2)).
double amplification_factor(double p_uav, double p_com, double p_an, double var_z,
                            double var_uav, int n_uav, double mean_tr_mw, double mean_tr_mv);

/// Convenience estimator of beta under a config's default power split; the
/// denominator expectations use `draws` joint channel/estimate realizations.
double amplification_factor(const SystemConfig& cfg, double p_com, double p_an, int draws,
                            Rng& rng);

/// Per-config channel statistics that do not depend on the power allocation:
/// the ZF normalization alpha, the AN-shaper trace normalizer, and the relay
/// denominator traces. Estimated once per substream and reused.
struct PrecoderStats {
    double alpha = 0.0;
    double an_trace = 0.0;     // E[Tr(D_sub D_sub^H)] before normalization
    double mean_tr_mw = 0.0;   // E[Tr(M Wc (M Wc)^H)], with Wc built at this alpha
    double mean_tr_mv = 0.0;   // E[Tr(M Vn (M Vn)^H)], Vn normalized by an_trace
};

PrecoderStats estimate_precoder_stats(const SystemConfig& cfg, int draws, Rng& rng);

/// One joint realization of the channel set and its estimates.
struct ChannelDraw {
    ComplexMatrix m;       // BS -> relay UAV,     n_uav x n_bs
    ComplexMatrix n;       // relay UAV -> users,  n_user x n_uav
    ComplexMatrix q;       // BS -> eavesdropper,  n_eave x n_bs
    ComplexMatrix z;       // relay -> eavesdropper, n_eave x n_uav
    ComplexMatrix m_hat;
    ComplexMatrix n_hat;
    ComplexMatrix nm_hat;  // n_hat * m_hat, n_user x n_bs
};

ChannelDraw draw_channel_set(const SystemConfig& cfg, Rng& rng);

}  // namespace iscc
