#include "iscc/channel.hpp"

#include <cmath>

#include "iscc/errors.hpp"

namespace iscc {

namespace {
constexpr double kCondLimit = 1e12;

// Inverse of the small Gram matrix H H^H with a condition-number guard.
ComplexMatrix guarded_gram_inverse(const ComplexMatrix& h) {
    ComplexMatrix gram = h * h.adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
    const auto& ev = es.eigenvalues();
    double lo = ev.minCoeff();
    double hi = ev.maxCoeff();
    if (!(lo > 0.0) || hi / lo > kCondLimit)
        throw SingularChannel("channel Gram matrix is singular or ill conditioned");
    return gram.inverse();
}
}  // namespace

double pathloss_gain(const PathLossSpec& spec) {
    if (!(spec.dis > 0.0) || !(spec.dis_ref > 0.0))
        throw InvalidParameter("path-loss distances must be positive");
    if (spec.exponent < 0.0) throw InvalidParameter("path-loss exponent must be non-negative");
    return std::pow(spec.dis / spec.dis_ref, -spec.exponent);
}

ComplexMatrix draw_channel(int rows, int cols, const RealVector& pathloss_diag, Rng& rng) {
    if (pathloss_diag.size() != rows)
        throw InvalidParameter("pathloss_diag length must equal the row count");
    ComplexMatrix c(rows, cols);
    for (int i = 0; i < rows; ++i) {
        double gain = pathloss_diag(i);
        if (gain < 0.0) throw InvalidParameter("path-loss gains must be non-negative");
        for (int j = 0; j < cols; ++j) c(i, j) = rng.cgaussian(gain);
    }
    return c;
}

ComplexMatrix mmse_estimate(const ComplexMatrix& c_true, const RealVector& gains,
                            const PilotSpec& pilot, Rng& rng) {
    if (gains.size() != c_true.rows())
        throw InvalidParameter("gains length must equal the channel row count");
    double tp = pilot.duration * pilot.power;
    if (!(tp > 0.0)) throw InvalidParameter("pilot duration*power must be positive");
    double noise_scale = 1.0 / std::sqrt(tp);
    ComplexMatrix est(c_true.rows(), c_true.cols());
    for (int i = 0; i < c_true.rows(); ++i) {
        double g = gains(i);
        double coeff = g > 0.0 ? g / (g + 1.0 / tp) : 0.0;
        for (int j = 0; j < c_true.cols(); ++j)
            est(i, j) = coeff * (c_true(i, j) + noise_scale * rng.cgaussian(1.0));
    }
    return est;
}

double error_stats(double gain, const PilotSpec& pilot) {
    if (gain < 0.0) throw InvalidParameter("gain must be non-negative");
    double tp = pilot.duration * pilot.power;
    if (!(tp > 0.0)) throw InvalidParameter("pilot duration*power must be positive");
    if (gain == 0.0) return 0.0;
    return gain * gain / (gain + 1.0 / tp);
}

ComplexMatrix zf_precoder(const ComplexMatrix& nm_hat, double alpha) {
    return alpha * nm_hat.adjoint() * guarded_gram_inverse(nm_hat);
}

double normalization_alpha(const std::vector<ComplexMatrix>& nm_hat_draws) {
    if (nm_hat_draws.empty()) throw InvalidParameter("normalization_alpha needs >= 1 draw");
    double acc = 0.0;
    for (const auto& h : nm_hat_draws) acc += guarded_gram_inverse(h).trace().real();
    return 1.0 / std::sqrt(acc / static_cast<double>(nm_hat_draws.size()));
}

ComplexMatrix an_projector(const ComplexMatrix& nm_hat) {
    const auto n_bs = nm_hat.cols();
    if (nm_hat.rows() >= n_bs)
        throw NoNullSpace("AN projector needs more BS antennas than users");
    ComplexMatrix inv = guarded_gram_inverse(nm_hat);
    return ComplexMatrix::Identity(n_bs, n_bs) - nm_hat.adjoint() * inv * nm_hat;
}

ComplexMatrix an_shaper(const ComplexMatrix& nm_hat, int n_uav, double expected_trace) {
    const auto n_bs = nm_hat.cols();
    if (nm_hat.rows() >= n_bs)
        throw NoNullSpace("AN shaper needs more BS antennas than users");
    if (n_uav < 1 || n_uav > n_bs) throw InvalidParameter("an_shaper: bad n_uav");
    // First n_uav columns of the projector, without forming the full D.
    ComplexMatrix inv = guarded_gram_inverse(nm_hat);
    ComplexMatrix g = inv * nm_hat.leftCols(n_uav);  // n_user x n_uav
    ComplexMatrix d_sub = -nm_hat.adjoint() * g;
    for (int k = 0; k < n_uav; ++k) d_sub(k, k) += 1.0;
    double tr = expected_trace > 0.0 ? expected_trace : d_sub.squaredNorm();
    return d_sub / std::sqrt(tr);
}

double amplification_factor(double p_uav, double p_com, double p_an, double var_z,
                            double var_uav, int n_uav, double mean_tr_mw, double mean_tr_mv) {
    if (p_uav < 0.0) throw InvalidParameter("p_uav must be non-negative");
    if (!(var_uav > 0.0)) throw InvalidParameter("UAV noise variance must be positive");
    double denom = p_com * mean_tr_mw + p_an * var_z * mean_tr_mv + n_uav * var_uav;
    return std::sqrt(p_uav / denom);
}

ChannelDraw draw_channel_set(const SystemConfig& cfg, Rng& rng) {
    ChannelDraw d;
    RealVector gm = RealVector::Constant(cfg.n_uav, cfg.gain_bs_uav());
    RealVector gn = RealVector::Constant(cfg.n_user, cfg.gain_uav_user());
    RealVector gq = RealVector::Constant(cfg.n_eave, cfg.gain_bs_eave());
    RealVector gz = RealVector::Constant(cfg.n_eave, cfg.gain_uav_eave());
    d.m = draw_channel(cfg.n_uav, cfg.n_bs, gm, rng);
    d.m_hat = mmse_estimate(d.m, gm, cfg.pilot_uav(), rng);
    d.n = draw_channel(cfg.n_user, cfg.n_uav, gn, rng);
    d.n_hat = mmse_estimate(d.n, gn, cfg.pilot_user(), rng);
    d.q = draw_channel(cfg.n_eave, cfg.n_bs, gq, rng);
    d.z = draw_channel(cfg.n_eave, cfg.n_uav, gz, rng);
    d.nm_hat = d.n_hat * d.m_hat;
    return d;
}

PrecoderStats estimate_precoder_stats(const SystemConfig& cfg, int draws, Rng& rng) {
    if (draws < 1) throw InvalidParameter("estimate_precoder_stats needs >= 1 draw");
    PrecoderStats s;
    // Pass 1: alpha and the AN trace normalizer.
    Rng pass1 = rng.substream(0x51a75);
    std::vector<ComplexMatrix> nm_draws;
    nm_draws.reserve(static_cast<size_t>(draws));
    double tr_acc = 0.0;
    for (int it = 0; it < draws; ++it) {
        ChannelDraw d = draw_channel_set(cfg, pass1);
        ComplexMatrix v_unnorm = an_shaper(d.nm_hat, cfg.n_uav, 1.0);  // trace = raw Tr(D D^H)
        tr_acc += v_unnorm.squaredNorm();
        nm_draws.push_back(std::move(d.nm_hat));
    }
    s.alpha = normalization_alpha(nm_draws);
    s.an_trace = tr_acc / static_cast<double>(draws);
    // Pass 2: relay denominator traces with the fixed alpha / trace normalizer.
    Rng pass2 = rng.substream(0xbe7a);
    double mw = 0.0, mv = 0.0;
    for (int it = 0; it < draws; ++it) {
        ChannelDraw d = draw_channel_set(cfg, pass2);
        ComplexMatrix wc = zf_precoder(d.nm_hat, s.alpha);
        ComplexMatrix vn = an_shaper(d.nm_hat, cfg.n_uav, s.an_trace);
        mw += (d.m * wc).squaredNorm();
        mv += (d.m * vn).squaredNorm();
    }
    s.mean_tr_mw = mw / static_cast<double>(draws);
    s.mean_tr_mv = mv / static_cast<double>(draws);
    return s;
}

double amplification_factor(const SystemConfig& cfg, double p_com, double p_an, int draws,
                            Rng& rng) {
    if (cfg.p_uav == 0.0) return 0.0;
    PrecoderStats s = estimate_precoder_stats(cfg, draws, rng);
    return amplification_factor(cfg.p_uav, p_com, p_an, cfg.noise.var_z(), cfg.noise.var_uav(),
                                cfg.n_uav, s.mean_tr_mw, s.mean_tr_mv);
}

}  // namespace iscc
