#pragma once

#include <vector>

#include "iscc/aoi.hpp"
#include "iscc/config.hpp"
#include "iscc/secrecy.hpp"
#include "iscc/sensing.hpp"

namespace iscc {

/// Decoded decision variables. P_AN is derived, never stored: the power budget
/// equality holds by construction.
struct DecisionVector {
    double p_com = 0.0;
    double p_sens = 0.0;
    double mu_bs = 0.0;
    double mu_uav = 0.0;

    double p_an(const SystemConfig& cfg) const { return cfg.p_sum - p_com - p_sens; }
};

using ObjectiveVector = std::vector<double>;

struct EvalResult {
    ObjectiveVector objectives;
    double f = 0.0;    // scalar sum of the objectives
    double phi = 0.0;  // constraint-violation degree
    bool feasible = false;
};

/// EvalResult plus the audit trail of the physical-layer evaluation.
struct IsccEval : EvalResult {
    DecisionVector x;
    RateBreakdown rates;
    double aaoi = 0.0;  // raw average AoI (or the sentinel)
};

/// Large finite objective used for f3 when the queueing model has no steady
/// state at the candidate point. Selection is violation-first, so the sentinel
/// never beats a feasible point.
constexpr double kAoiSentinel = 1e6;

/// Maps genes in [0,1]^4 onto the decision box. Power genes land strictly
/// inside (0, P_sum) via a 1e-3-of-range interior margin; rate genes map
/// affinely onto [mu_min, mu_max]. Out-of-range genes are clipped (reported
/// through `clipped` when given, never fatal).
DecisionVector decode(const std::vector<double>& genes, const SystemConfig& cfg,
                      bool* clipped = nullptr);

/// phi = sum of clipped constraint excesses; 0 iff feasible.
double violation(const DecisionVector& x, const SystemConfig& cfg, double gamma_secure);

/// Per-generation shared evaluation context (common random numbers): every
/// candidate in a generation sees the same channel statistics, so objective
/// differences reflect the decision variables, not sampling noise.
struct EvalContext {
    AngleGrid grid;
    SecrecyStats stats;
};

EvalContext make_eval_context(const SystemConfig& cfg, int n_samples, Rng& rng);

IsccEval evaluate(const DecisionVector& x, const SystemConfig& cfg, const EvalContext& ctx);

double scalarize(const ObjectiveVector& obj);

/// Optimizer-facing interface. begin_generation refreshes any shared
/// evaluation context from the generation's rng substream.
class OptProblem {
public:
    virtual ~OptProblem() = default;
    virtual int dim() const = 0;
    virtual void begin_generation(Rng& rng) = 0;
    virtual EvalResult evaluate_genes(const std::vector<double>& genes) const = 0;
};

class IsccProblem : public OptProblem {
public:
    IsccProblem(const SystemConfig& cfg, int n_samples) : cfg_(cfg), n_samples_(n_samples) {}

    int dim() const override { return 4; }
    void begin_generation(Rng& rng) override;
    EvalResult evaluate_genes(const std::vector<double>& genes) const override;

    /// Full physical-layer audit record for a gene vector.
    IsccEval evaluate_full(const std::vector<double>& genes) const;

    const SystemConfig& config() const { return cfg_; }
    const EvalContext& context() const { return ctx_; }

private:
    SystemConfig cfg_;
    int n_samples_;
    EvalContext ctx_;
};

}  // namespace iscc
