#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "iscc/config.hpp"
#include "iscc/problem.hpp"
#include "iscc/rng.hpp"

namespace iscc {

struct Individual {
    std::vector<double> genes;  // in [0,1]^dim after every variation
    EvalResult eval;
    bool evaluated = false;
};

struct Population {
    std::vector<Individual> members;
    int generation = 0;
};

/// Aggregate population metrics driving operator selection.
///   con: mean summed objectives, fea: mean violation,
///   div: inverse objective-range sum (guarded; lower = more spread).
struct PopulationState {
    double con = 0.0;
    double fea = 0.0;
    double div = 0.0;
};

/// Lexicographic (violation, scalar objective) order used wherever a single
/// "best" individual is needed.
bool lex_better(const EvalResult& a, const EvalResult& b);

/// Pareto dominance: a <= b componentwise with at least one strict.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Non-dominated front index (0 = best) per point, O(n^2 m).
std::vector<int> nd_ranks(const std::vector<ObjectiveVector>& points);

Population init_population(int n_pop, int dim, Rng& rng);

/// Variation bank. op 0: DE/rand/1/bin; 1: DE/best/1/bin; 2: SBX crossover +
/// polynomial mutation; 3: uniform restart of a random gene fraction.
/// Offspring are clipped to [0,1] and returned unevaluated.
Population apply_operator(const Population& pop, int op_id, const MoeaConfig& mc, Rng& rng);

/// Violation-first truncation to n_pop: feasible members ranked by
/// non-dominated front then crowding distance (ties by pool index), followed
/// by infeasible members in ascending violation order.
Population environmental_selection(std::vector<Individual> pool, int n_pop);

PopulationState population_state(const Population& pop);

/// Maximal non-dominated feasible subset (may be empty).
std::vector<Individual> pareto_front(const Population& pop);

/// Evaluates every unevaluated member. Fans out across ISCC_THREADS worker
/// threads when set (evaluate_genes is pure).
void evaluate_all(const OptProblem& problem, std::vector<Individual>& members);

struct GenLog {
    int generation = 0;
    double con = 0.0;
    double fea = 0.0;
    double div = 0.0;
    double best_f = std::numeric_limits<double>::infinity();  // running feasible best
    int op = -1;          // chosen operator (-1 where not applicable)
    double reward = 0.0;  // DQN runs only
    double loss = 0.0;    // DQN runs only
};

struct RunResult {
    std::uint64_t seed = 0;
    bool has_feasible = false;
    double best_f = std::numeric_limits<double>::infinity();  // best feasible scalar
    Individual best;  // overall lex-best; least-violating when nothing is feasible
    Population final_pop;
    std::vector<Individual> front;
    std::vector<GenLog> log;  // one row per generation, including generation 0
    long evaluations = 0;     // variation evaluations only; the initial population is free
    double wall_seconds = 0.0;
};

/// Generational GA baseline: binary tournament on (phi, F), SBX + polynomial
/// mutation, elitism of one. Spends exactly mc.budget evaluations.
RunResult run_ga(OptProblem& problem, const MoeaConfig& mc, Rng rng);

/// IMODE-style baseline: three DE strategies over success-resized
/// sub-populations, linear population reduction to N_min, violation-first
/// selection. No local-search phase.
RunResult run_imode(OptProblem& problem, const MoeaConfig& mc, Rng rng);

/// Plain MOEA applying one fixed operator every generation with
/// environmental selection. Shares the substream layout of the learned-agent
/// loop so a degenerate single-action agent reproduces it exactly.
RunResult run_single_op(OptProblem& problem, const MoeaConfig& mc, int op_id, Rng rng);

}  // namespace iscc
