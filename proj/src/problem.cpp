#include "iscc/problem.hpp"

#include <algorithm>
#include <cmath>

#include "iscc/errors.hpp"

namespace iscc {

DecisionVector decode(const std::vector<double>& genes, const SystemConfig& cfg, bool* clipped) {
    if (genes.size() != 4) throw InvalidParameter("decode expects 4 genes");
    bool clip = false;
    double g[4];
    for (int i = 0; i < 4; ++i) {
        g[i] = genes[i];
        if (g[i] < 0.0 || g[i] > 1.0) {
            g[i] = std::clamp(g[i], 0.0, 1.0);
            clip = true;
        }
    }
    if (clipped) *clipped = clip;
    DecisionVector x;
    double pm = 1e-3 * cfg.p_sum;  // interior margin: power intervals are open
    x.p_com = pm + g[0] * (cfg.p_sum - 2.0 * pm);
    x.p_sens = pm + g[1] * (cfg.p_sum - 2.0 * pm);
    x.mu_bs = cfg.mu_min + g[2] * (cfg.mu_max - cfg.mu_min);
    x.mu_uav = cfg.mu_min + g[3] * (cfg.mu_max - cfg.mu_min);
    return x;
}

double violation(const DecisionVector& x, const SystemConfig& cfg, double gamma_secure) {
    double phi = 0.0;
    phi += std::max(0.0, -x.p_an(cfg));                       // g1: AN power budget
    phi += std::max(0.0, -x.p_com) + std::max(0.0, x.p_com - cfg.p_sum);    // g2
    phi += std::max(0.0, -x.p_sens) + std::max(0.0, x.p_sens - cfg.p_sum);  // g3
    // g4/g5: 0 < rho < 1 with iota slack, rho = muT(muB - muU)/(muB muU).
    double mu_trans = gamma_secure;
    if (x.mu_bs > 0.0 && x.mu_uav > 0.0) {
        double rho = mu_trans * (x.mu_bs - x.mu_uav) / (x.mu_bs * x.mu_uav);
        phi += std::max(0.0, cfg.iota - rho);
        phi += std::max(0.0, rho - (1.0 - cfg.iota));
    } else {
        phi += 1.0;  // rates outside the physical domain
    }
    phi += std::max(0.0, cfg.gamma_th - mu_trans);  // g6: user QoS
    return phi;
}

EvalContext make_eval_context(const SystemConfig& cfg, int n_samples, Rng& rng) {
    EvalContext ctx;
    ctx.grid = make_grid(cfg);
    ctx.stats = compute_secrecy_stats(cfg, n_samples, rng);
    return ctx;
}

IsccEval evaluate(const DecisionVector& x, const SystemConfig& cfg, const EvalContext& ctx) {
    IsccEval r;
    r.x = x;
    double p_an = x.p_an(cfg);
    r.rates = rates_from_stats(ctx.stats, cfg, std::max(0.0, x.p_com), std::max(0.0, p_an));
    double mu_trans = r.rates.gamma_secure;

    double f1 = sensing_objective(cfg, ctx.grid, std::clamp(x.p_sens, 0.0, cfg.p_sum));
    double f2 = -cfg.weight_secrecy * r.rates.gamma_secure;

    QueueRates q{x.mu_bs, mu_trans, x.mu_uav};
    double f3;
    if (rates_valid(q) && gi_m_1_stable(q)) {
        if (rates_singular(q)) q.mu_bs *= 1.0 + 8.0 * kRateSingularityRel;  // off the pole
        r.aaoi = closed_form_aaoi(q);
        f3 = cfg.weight_aoi * r.aaoi;
    } else {
        r.aaoi = kAoiSentinel;
        f3 = kAoiSentinel;
    }
    double f4 = cfg.weight_energy * x.mu_uav * x.mu_uav * x.mu_uav;

    r.objectives = {f1, f2, f3, f4};
    r.f = scalarize(r.objectives);
    r.phi = violation(x, cfg, r.rates.gamma_secure);
    r.feasible = r.phi == 0.0;
    return r;
}

double scalarize(const ObjectiveVector& obj) {
    double acc = 0.0;
    for (double v : obj) acc += v;
    return acc;
}

void IsccProblem::begin_generation(Rng& rng) {
    Rng sub = rng.substream(0xc72);
    ctx_ = make_eval_context(cfg_, n_samples_, sub);
}

EvalResult IsccProblem::evaluate_genes(const std::vector<double>& genes) const {
    return evaluate_full(genes);
}

IsccEval IsccProblem::evaluate_full(const std::vector<double>& genes) const {
    DecisionVector x = decode(genes, cfg_);
    return evaluate(x, cfg_, ctx_);
}

}  // namespace iscc
