#include "iscc/secrecy.hpp"

#include <cmath>

#include "iscc/errors.hpp"

namespace iscc {

double prelog_factor(double t_c_uav, double t_c_bs, double t_uav, double t_bs) {
    double numerator = std::min(t_c_uav - t_uav, t_c_bs - t_bs);
    if (!(numerator > 0.0))
        throw InvalidParameter("prelog: pilot duration consumes the whole coherence interval");
    return numerator / (t_c_uav + t_c_bs);
}

double secrecy_from_parts(double gamma_user, double gamma_eave1, double gamma_eave2) {
    if (gamma_user < 0.0 || gamma_eave1 < 0.0 || gamma_eave2 < 0.0)
        throw InvalidParameter("rates must be non-negative");
    return std::max(0.0, gamma_user - 0.5 * (gamma_eave1 + gamma_eave2));
}

SecrecyStats compute_secrecy_stats(const SystemConfig& cfg, int n_samples, Rng& rng) {
    if (n_samples < 1) throw InvalidParameter("compute_secrecy_stats needs >= 1 sample");
    SecrecyStats s;
    Rng norm_rng = rng.substream(0xa1fa);
    s.precoder = estimate_precoder_stats(cfg, cfg.mc_norm_draws, norm_rng);
    s.n_samples = n_samples;

    Rng draw_rng = rng.substream(0xd0a);
    const int l = 0;  // reported user index
    for (int it = 0; it < n_samples; ++it) {
        ChannelDraw d = draw_channel_set(cfg, draw_rng);
        ComplexMatrix wc = zf_precoder(d.nm_hat, s.precoder.alpha);
        ComplexMatrix vn = an_shaper(d.nm_hat, cfg.n_uav, s.precoder.an_trace);

        Eigen::RowVectorXcd n_l = d.n.row(l);
        Eigen::RowVectorXcd nlm = n_l * d.m;        // 1 x n_bs
        Eigen::RowVectorXcd nlmw = nlm * wc;        // 1 x n_user
        std::complex<double> u = nlmw(l);
        s.mean_u += u;
        s.mean_u_abs2 += std::norm(u);
        for (int j = 0; j < cfg.n_user; ++j)
            if (j != l) s.mean_user_iui += std::norm(nlmw(j));
        s.mean_user_an += (nlm * vn).squaredNorm();
        s.mean_user_nl2 += n_l.squaredNorm();

        ComplexMatrix qw = d.q * wc;  // n_eave x n_user
        s.mean_e1_sig += qw.col(l).squaredNorm();
        for (int j = 0; j < cfg.n_user; ++j)
            if (j != l) s.mean_e1_iui += qw.col(j).squaredNorm();
        s.mean_e1_an += (d.q * vn).squaredNorm();

        ComplexMatrix zm = d.z * d.m;   // n_eave x n_bs
        ComplexMatrix zmw = zm * wc;    // n_eave x n_user
        s.mean_e2_sig += zmw.col(l).squaredNorm();
        for (int j = 0; j < cfg.n_user; ++j)
            if (j != l) s.mean_e2_iui += zmw.col(j).squaredNorm();
        s.mean_e2_an += (zm * vn).squaredNorm();
        s.mean_e2_z2 += d.z.squaredNorm();
    }

    double inv = 1.0 / n_samples;
    s.mean_u *= inv;
    s.mean_u_abs2 *= inv;
    s.mean_user_iui *= inv;
    s.mean_user_an *= inv;
    s.mean_user_nl2 *= inv;
    s.mean_e1_sig *= inv;
    s.mean_e1_iui *= inv;
    s.mean_e1_an *= inv;
    s.mean_e2_sig *= inv;
    s.mean_e2_iui *= inv;
    s.mean_e2_an *= inv;
    s.mean_e2_z2 *= inv;
    return s;
}

RateBreakdown rates_from_stats(const SecrecyStats& s, const SystemConfig& cfg, double p_com,
                               double p_an) {
    if (p_com < 0.0 || p_an < 0.0) throw InvalidParameter("powers must be non-negative");
    RateBreakdown rb;
    rb.prelog = prelog_factor(cfg.t_c_uav, cfg.t_c_bs, cfg.t_uav, cfg.t_bs);

    const double var_z = cfg.noise.var_z();
    const double var_uav = cfg.noise.var_uav();
    const double var_user = cfg.noise.var_user();
    const double var_eave = cfg.noise.var_eave();

    rb.beta = amplification_factor(cfg.p_uav, p_com, p_an, var_z, var_uav, cfg.n_uav,
                                   s.precoder.mean_tr_mw, s.precoder.mean_tr_mv);
    const double b2 = rb.beta * rb.beta;

    // legitimate user
    double signal = b2 * p_com * std::norm(s.mean_u);
    rb.p_interf[0] = b2 * p_com * std::max(0.0, s.mean_u_abs2 - std::norm(s.mean_u));
    rb.p_interf[1] = b2 * p_com * s.mean_user_iui;
    rb.p_interf[2] = b2 * var_z * p_an * s.mean_user_an;
    rb.p_interf[3] = b2 * var_uav * s.mean_user_nl2;
    double user_denom =
        rb.p_interf[0] + rb.p_interf[1] + rb.p_interf[2] + rb.p_interf[3] + var_user;
    rb.gamma_user = rb.prelog * std::log2(1.0 + signal / user_denom);

    // eavesdropper, hop 1 (direct BS interception)
    double e1_num = p_com * s.mean_e1_sig;
    double e1_den = p_com * s.mean_e1_iui + var_z * p_an * s.mean_e1_an + var_eave;
    rb.gamma_eave1 = std::log2(1.0 + e1_num / e1_den);

    // eavesdropper, hop 2 (relay interception)
    rb.p_jam[0] = b2 * p_com * s.mean_e2_iui;
    rb.p_jam[1] = b2 * var_z * p_an * s.mean_e2_an;
    rb.p_jam[2] = b2 * var_uav * s.mean_e2_z2;
    double e2_num = b2 * p_com * s.mean_e2_sig;
    double e2_den = rb.p_jam[0] + rb.p_jam[1] + rb.p_jam[2] + var_eave;
    rb.gamma_eave2 = std::log2(1.0 + e2_num / e2_den);

    rb.gamma_eave = 0.5 * (rb.gamma_eave1 + rb.gamma_eave2);
    rb.gamma_secure = secrecy_from_parts(rb.gamma_user, rb.gamma_eave1, rb.gamma_eave2);
    return rb;
}

RateBreakdown estimate_rates(const SystemConfig& cfg, double p_com, double p_an, int n_samples,
                             Rng& rng) {
    SecrecyStats s = compute_secrecy_stats(cfg, n_samples, rng);
    return rates_from_stats(s, cfg, p_com, p_an);
}

RateBreakdown estimate_rates(const SystemConfig& cfg, int n_samples, Rng& rng) {
    double p_an = cfg.p_sum - cfg.default_p_com - cfg.default_p_sens;
    return estimate_rates(cfg, cfg.default_p_com, p_an, n_samples, rng);
}

}  // namespace iscc
