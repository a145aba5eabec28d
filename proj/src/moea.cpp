#include "iscc/moea.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "iscc/errors.hpp"

namespace iscc {

namespace {

// Substream layout shared by every runner so that trajectories are comparable
// across algorithms with the same root seed.
constexpr std::uint64_t kStreamContext = 1;
constexpr std::uint64_t kStreamInit = 2;
constexpr std::uint64_t kStreamVariation = 3;

int worker_threads() {
    const char* s = std::getenv("ISCC_THREADS");
    if (!s) return 1;
    int n = std::atoi(s);
    return std::clamp(n, 1, 64);
}

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

int best_index(const Population& pop) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(pop.members.size()); ++i)
        if (lex_better(pop.members[i].eval, pop.members[best].eval)) best = i;
    return best;
}

/// Three distinct indices in [0, n) different from excl.
void pick3(int n, int excl, Rng& rng, int out[3]) {
    for (int k = 0; k < 3; ++k) {
        int r;
        bool fresh;
        do {
            r = rng.uniform_int(n);
            fresh = r != excl;
            for (int j = 0; j < k && fresh; ++j) fresh = r != out[j];
        } while (!fresh);
        out[k] = r;
    }
}

std::vector<double> de_bin(const std::vector<double>& target, const std::vector<double>& base,
                           const std::vector<double>& d1, const std::vector<double>& d2, double f,
                           double cr, Rng& rng) {
    int dim = static_cast<int>(target.size());
    std::vector<double> child = target;
    int jrand = rng.uniform_int(dim);
    for (int j = 0; j < dim; ++j) {
        if (j != jrand && rng.uniform() >= cr) continue;
        double d = d1[j] - d2[j];
        // stagnation guard: a homogenized population yields zero differences
        // and freezes DE; substitute a small random difference instead
        if (std::abs(d) < 1e-9) d = 0.02 * rng.gaussian();
        child[j] = clip01(base[j] + f * d);
    }
    return child;
}

void sbx_pair(const std::vector<double>& p1, const std::vector<double>& p2, double eta, Rng& rng,
              std::vector<double>& c1, std::vector<double>& c2, double gene_prob = 0.5) {
    int dim = static_cast<int>(p1.size());
    c1 = p1;
    c2 = p2;
    for (int j = 0; j < dim; ++j) {
        if (rng.uniform() >= gene_prob) continue;
        if (std::abs(p1[j] - p2[j]) < 1e-14) continue;
        double u = rng.uniform();
        double bq = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                            : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double a = 0.5 * ((1.0 + bq) * p1[j] + (1.0 - bq) * p2[j]);
        double b = 0.5 * ((1.0 - bq) * p1[j] + (1.0 + bq) * p2[j]);
        if (rng.uniform() < 0.5) std::swap(a, b);
        c1[j] = clip01(a);
        c2[j] = clip01(b);
    }
}

void poly_mutate(std::vector<double>& x, double eta, double rate, Rng& rng) {
    for (double& v : x) {
        if (rng.uniform() >= rate) continue;
        double u = rng.uniform();
        double dq;
        if (u < 0.5)
            dq = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - v, eta + 1.0),
                          1.0 / (eta + 1.0)) -
                 1.0;
        else
            dq = 1.0 - std::pow(2.0 * (1.0 - u) + (2.0 * u - 1.0) * std::pow(v, eta + 1.0),
                                1.0 / (eta + 1.0));
        v = clip01(v + dq);
    }
}

std::vector<double> crowding_distance(const std::vector<ObjectiveVector>& pts,
                                      const std::vector<int>& front) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(front.size(), 0.0);
    if (front.size() <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    int m = static_cast<int>(pts[front[0]].size());
    // The extremum of the aggregate (equal-weight) direction is a boundary
    // point of the front too; protecting it keeps the incumbent from being
    // truncated, so refinement around it can compound across generations.
    int agg = 0;
    double agg_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < front.size(); ++i) {
        double s = 0.0;
        for (double v : pts[front[i]]) s += v;
        if (s < agg_sum) {
            agg_sum = s;
            agg = static_cast<int>(i);
        }
    }
    dist[agg] = inf;
    std::vector<int> order(front.size());
    for (int k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return pts[front[a]][k] < pts[front[b]][k];
        });
        double lo = pts[front[order.front()]][k];
        double hi = pts[front[order.back()]][k];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        if (hi - lo < 1e-300) continue;
        for (std::size_t i = 1; i + 1 < order.size(); ++i)
            dist[order[i]] += (pts[front[order[i + 1]]][k] - pts[front[order[i - 1]]][k]) / (hi - lo);
    }
    return dist;
}

struct RunTracker {
    RunResult res;

    void observe(const Population& pop) { observe_members(pop.members); }

    void observe_members(const std::vector<Individual>& members) {
        for (const Individual& ind : members) {
            if (!res.best.evaluated || lex_better(ind.eval, res.best.eval)) res.best = ind;
            if (ind.eval.feasible && ind.eval.f < res.best_f) {
                res.best_f = ind.eval.f;
                res.has_feasible = true;
            }
        }
    }

    void log(const Population& pop, int op, double reward, double loss) {
        PopulationState st = population_state(pop);
        res.log.push_back({pop.generation, st.con, st.fea, st.div, res.best_f, op, reward, loss});
    }

    void finish(Population pop) {
        res.front = pareto_front(pop);
        res.final_pop = std::move(pop);
    }
};

}  // namespace

bool lex_better(const EvalResult& a, const EvalResult& b) {
    if (a.phi != b.phi) return a.phi < b.phi;
    return a.f < b.f;
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

std::vector<int> nd_ranks(const std::vector<ObjectiveVector>& points) {
    int n = static_cast<int>(points.size());
    std::vector<int> count(n, 0);
    std::vector<std::vector<int>> dominated(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates(points[i], points[j])) dominated[i].push_back(j);
            else if (dominates(points[j], points[i])) ++count[i];
        }
    std::vector<int> rank(n, -1);
    std::vector<int> current;
    for (int i = 0; i < n; ++i)
        if (count[i] == 0) current.push_back(i);
    int level = 0;
    while (!current.empty()) {
        std::vector<int> next;
        for (int i : current) {
            rank[i] = level;
            for (int j : dominated[i])
                if (--count[j] == 0) next.push_back(j);
        }
        current = std::move(next);
        ++level;
    }
    return rank;
}

Population init_population(int n_pop, int dim, Rng& rng) {
    if (n_pop < 4) throw InvalidParameter("init_population: N_POP must be >= 4");
    Population pop;
    pop.members.resize(n_pop);
    for (Individual& ind : pop.members) {
        ind.genes.resize(dim);
        for (double& g : ind.genes) g = rng.uniform();
    }
    return pop;
}

Population apply_operator(const Population& pop, int op_id, const MoeaConfig& mc, Rng& rng) {
    int n = static_cast<int>(pop.members.size());
    if (n < 4) throw InvalidParameter("apply_operator: population too small");
    int dim = static_cast<int>(pop.members[0].genes.size());
    Population off;
    off.generation = pop.generation + 1;
    off.members.resize(n);

    switch (op_id) {
        case 0: {  // DE/rand/1/bin
            for (int i = 0; i < n; ++i) {
                int r[3];
                pick3(n, i, rng, r);
                double f = rng.uniform(mc.de_f_min, mc.de_f_max);
                off.members[i].genes =
                    de_bin(pop.members[i].genes, pop.members[r[0]].genes, pop.members[r[1]].genes,
                           pop.members[r[2]].genes, f, mc.de_cr, rng);
            }
            break;
        }
        case 1: {  // DE/best/1/bin; the difference pair comes from size-4 lex
                   // tournaments, which shortens and orients the steps along
                   // the good region instead of the full population spread.
            int b = best_index(pop);
            auto tourney = [&]() {
                int w = rng.uniform_int(n);
                for (int t = 1; t < 4; ++t) {
                    int c = rng.uniform_int(n);
                    if (lex_better(pop.members[c].eval, pop.members[w].eval)) w = c;
                }
                return w;
            };
            for (int i = 0; i < n; ++i) {
                int r1 = tourney();
                int r2 = tourney();
                // per-child log-uniform shrink: coarse steps keep exploring,
                // fine ones refine the incumbent beyond the population spread
                double f = rng.uniform(mc.de_f_min, mc.de_f_max) *
                           std::pow(10.0, -3.0 * rng.uniform());
                off.members[i].genes =
                    de_bin(pop.members[i].genes, pop.members[b].genes, pop.members[r1].genes,
                           pop.members[r2].genes, f, mc.de_cr, rng);
            }
            break;
        }
        case 2: {  // SBX with the incumbent + polynomial mutation. Pairing every
                   // member with the lex-best and keeping the incumbent-biased
                   // child gives multiscale refinement around it: near members
                   // produce tight samples, far members probe the segment.
            int b = best_index(pop);
            for (int i = 0; i < n; ++i) {
                std::vector<double> c1, c2;
                // low per-gene rate: many children are incumbent copies whose
                // polynomial mutation then acts as coordinate-wise polish
                sbx_pair(pop.members[i].genes, pop.members[b].genes, mc.sbx_eta, rng, c1, c2, 0.25);
                off.members[i].genes = std::move(c2);
            }
            for (Individual& ind : off.members)
                poly_mutate(ind.genes, mc.pm_eta, 1.0 / dim, rng);
            break;
        }
        case 3: {  // uniform restart of a random gene fraction
            int k = static_cast<int>(std::lround(mc.restart_fraction * dim));
            for (int i = 0; i < n; ++i) {
                off.members[i].genes = pop.members[i].genes;
                std::vector<int> idx(dim);
                std::iota(idx.begin(), idx.end(), 0);
                for (int j = dim - 1; j > 0; --j) std::swap(idx[j], idx[rng.uniform_int(j + 1)]);
                for (int j = 0; j < k; ++j) off.members[i].genes[idx[j]] = rng.uniform();
            }
            break;
        }
        default:
            throw InvalidParameter("apply_operator: unknown operator id");
    }
    return off;
}

Population environmental_selection(std::vector<Individual> pool, int n_pop) {
    if (static_cast<int>(pool.size()) < n_pop)
        throw InvalidParameter("environmental_selection: pool smaller than target size");

    std::vector<int> feas, infeas;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i)
        (pool[i].eval.feasible ? feas : infeas).push_back(i);

    std::vector<int> order;
    order.reserve(pool.size());
    if (!feas.empty()) {
        std::vector<ObjectiveVector> pts(feas.size());
        for (std::size_t i = 0; i < feas.size(); ++i) pts[i] = pool[feas[i]].eval.objectives;
        std::vector<int> rank = nd_ranks(pts);
        int n_fronts = *std::max_element(rank.begin(), rank.end()) + 1;
        std::vector<std::vector<int>> fronts(n_fronts);  // local indices into feas
        for (std::size_t i = 0; i < feas.size(); ++i) fronts[rank[i]].push_back(static_cast<int>(i));
        for (const std::vector<int>& fr : fronts) {
            std::vector<double> cd = crowding_distance(pts, fr);
            std::vector<int> by_cd(fr.size());
            std::iota(by_cd.begin(), by_cd.end(), 0);
            std::stable_sort(by_cd.begin(), by_cd.end(), [&](int a, int b) {
                if (cd[a] != cd[b]) return cd[a] > cd[b];
                return feas[fr[a]] < feas[fr[b]];
            });
            for (int k : by_cd) order.push_back(feas[fr[k]]);
        }
    }
    std::stable_sort(infeas.begin(), infeas.end(), [&](int a, int b) {
        if (pool[a].eval.phi != pool[b].eval.phi) return pool[a].eval.phi < pool[b].eval.phi;
        // phi ties are exact when genes differ only in dimensions the
        // constraints ignore; the scalar objective breaks them so those
        // dimensions still feel selection pressure
        if (pool[a].eval.f != pool[b].eval.f) return pool[a].eval.f < pool[b].eval.f;
        return a < b;
    });
    order.insert(order.end(), infeas.begin(), infeas.end());

    Population out;
    out.members.reserve(n_pop);
    for (int i = 0; i < n_pop; ++i) out.members.push_back(std::move(pool[order[i]]));
    return out;
}

PopulationState population_state(const Population& pop) {
    PopulationState st;
    if (pop.members.empty()) return st;
    std::size_t m = pop.members[0].eval.objectives.size();
    std::vector<double> lo(m, std::numeric_limits<double>::infinity());
    std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
    for (const Individual& ind : pop.members) {
        st.con += ind.eval.f;
        st.fea += ind.eval.phi;
        for (std::size_t k = 0; k < m; ++k) {
            lo[k] = std::min(lo[k], ind.eval.objectives[k]);
            hi[k] = std::max(hi[k], ind.eval.objectives[k]);
        }
    }
    double n = static_cast<double>(pop.members.size());
    st.con /= n;
    st.fea /= n;
    double range = 0.0;
    for (std::size_t k = 0; k < m; ++k) range += hi[k] - lo[k];
    st.div = 1.0 / (range + 1e-12);
    return st;
}

std::vector<Individual> pareto_front(const Population& pop) {
    std::vector<const Individual*> feas;
    for (const Individual& ind : pop.members)
        if (ind.eval.feasible) feas.push_back(&ind);
    std::vector<Individual> front;
    for (std::size_t i = 0; i < feas.size(); ++i) {
        bool dom = false;
        for (std::size_t j = 0; j < feas.size() && !dom; ++j)
            dom = j != i && dominates(feas[j]->eval.objectives, feas[i]->eval.objectives);
        if (!dom) front.push_back(*feas[i]);
    }
    return front;
}

void evaluate_all(const OptProblem& problem, std::vector<Individual>& members) {
    int nt = worker_threads();
    auto eval_one = [&](Individual& ind) {
        if (!ind.evaluated) {
            ind.eval = problem.evaluate_genes(ind.genes);
            ind.evaluated = true;
        }
    };
    if (nt <= 1 || members.size() < 8) {
        for (Individual& ind : members) eval_one(ind);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < nt; ++t)
        workers.emplace_back([&] {
            for (std::size_t i = cursor.fetch_add(1); i < members.size(); i = cursor.fetch_add(1))
                eval_one(members[i]);
        });
    for (std::thread& w : workers) w.join();
}

RunResult run_ga(OptProblem& problem, const MoeaConfig& mc, Rng rng) {
    Rng ctx_rng = rng.substream(kStreamContext);
    problem.begin_generation(ctx_rng);
    Rng init_rng = rng.substream(kStreamInit);
    Population pop = init_population(mc.pop_size, problem.dim(), init_rng);
    evaluate_all(problem, pop.members);

    RunTracker tr;
    tr.res.seed = rng.seed();
    tr.observe(pop);
    tr.log(pop, -1, 0.0, 0.0);

    Rng var_base = rng.substream(kStreamVariation);
    long used = 0;
    int n = mc.pop_size;
    while (used < mc.budget) {
        Rng gen_rng = var_base.substream(static_cast<std::uint64_t>(pop.generation));
        int k = static_cast<int>(std::min<long>(n - 1, mc.budget - used));
        if (k < 1) k = 1;

        auto tournament = [&]() -> const Individual& {
            const Individual& a = pop.members[gen_rng.uniform_int(n)];
            const Individual& b = pop.members[gen_rng.uniform_int(n)];
            return lex_better(b.eval, a.eval) ? b : a;
        };
        std::vector<Individual> off;
        off.reserve(k);
        while (static_cast<int>(off.size()) < k) {
            std::vector<double> c1, c2;
            sbx_pair(tournament().genes, tournament().genes, mc.sbx_eta, gen_rng, c1, c2);
            poly_mutate(c1, mc.pm_eta, 1.0 / problem.dim(), gen_rng);
            Individual child;
            child.genes = std::move(c1);
            off.push_back(std::move(child));
            if (static_cast<int>(off.size()) < k) {
                poly_mutate(c2, mc.pm_eta, 1.0 / problem.dim(), gen_rng);
                Individual child2;
                child2.genes = std::move(c2);
                off.push_back(std::move(child2));
            }
        }
        evaluate_all(problem, off);
        used += k;
        tr.observe_members(off);

        // elitism of one: the lex-best parent survives; the offspring fill the
        // rest (padded with the best remaining parents on the final short
        // generation).
        Population next;
        next.generation = pop.generation + 1;
        next.members.push_back(pop.members[best_index(pop)]);
        std::stable_sort(off.begin(), off.end(),
                         [](const Individual& a, const Individual& b) {
                             return lex_better(a.eval, b.eval);
                         });
        for (Individual& ind : off) {
            if (static_cast<int>(next.members.size()) >= n) break;
            next.members.push_back(std::move(ind));
        }
        if (static_cast<int>(next.members.size()) < n) {
            std::vector<Individual> parents = pop.members;
            std::stable_sort(parents.begin(), parents.end(),
                             [](const Individual& a, const Individual& b) {
                                 return lex_better(a.eval, b.eval);
                             });
            for (Individual& ind : parents) {
                if (static_cast<int>(next.members.size()) >= n) break;
                next.members.push_back(std::move(ind));
            }
        }
        pop = std::move(next);
        tr.observe(pop);
        tr.log(pop, -1, 0.0, 0.0);
    }
    tr.res.evaluations = used;
    tr.finish(std::move(pop));
    return tr.res;
}

RunResult run_imode(OptProblem& problem, const MoeaConfig& mc, Rng rng) {
    constexpr int kMinPop = 8;
    constexpr int kStrategies = 3;

    Rng ctx_rng = rng.substream(kStreamContext);
    problem.begin_generation(ctx_rng);
    Rng init_rng = rng.substream(kStreamInit);
    Population pop = init_population(mc.pop_size, problem.dim(), init_rng);
    evaluate_all(problem, pop.members);

    RunTracker tr;
    tr.res.seed = rng.seed();
    tr.observe(pop);
    tr.log(pop, -1, 0.0, 0.0);

    Rng var_base = rng.substream(kStreamVariation);
    long used = 0;
    double quality[kStrategies] = {1.0 / 3, 1.0 / 3, 1.0 / 3};

    while (used < mc.budget) {
        Rng gen_rng = var_base.substream(static_cast<std::uint64_t>(pop.generation));
        int n = static_cast<int>(pop.members.size());
        int k = static_cast<int>(std::min<long>(n, mc.budget - used));

        // sub-population partition proportional to smoothed strategy quality
        int sizes[kStrategies];
        int assigned = 0;
        for (int s = 0; s < kStrategies; ++s) {
            sizes[s] = std::max(2, static_cast<int>(std::floor(quality[s] * n)));
            assigned += sizes[s];
        }
        while (assigned > n) {
            int big = 0;
            for (int s = 1; s < kStrategies; ++s)
                if (sizes[s] > sizes[big]) big = s;
            --sizes[big];
            --assigned;
        }
        while (assigned < n) {
            ++sizes[assigned % kStrategies];
            ++assigned;
        }
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[gen_rng.uniform_int(i + 1)]);
        std::vector<int> strat_of(n);
        {
            int pos = 0;
            for (int s = 0; s < kStrategies; ++s)
                for (int c = 0; c < sizes[s]; ++c) strat_of[perm[pos++]] = s;
        }

        int b = best_index(pop);
        std::vector<Individual> off(k);
        std::vector<int> parent_of(k);
        for (int i = 0; i < k; ++i) {
            parent_of[i] = i;
            int r[3];
            pick3(n, i, gen_rng, r);
            double f = gen_rng.uniform(mc.de_f_min, mc.de_f_max);
            const std::vector<double>& xi = pop.members[i].genes;
            switch (strat_of[i]) {
                case 0:
                    off[i].genes = de_bin(xi, pop.members[r[0]].genes, pop.members[r[1]].genes,
                                          pop.members[r[2]].genes, f, mc.de_cr, gen_rng);
                    break;
                case 1:
                    off[i].genes = de_bin(xi, pop.members[b].genes, pop.members[r[0]].genes,
                                          pop.members[r[1]].genes, f, mc.de_cr, gen_rng);
                    break;
                default: {  // DE/current-to-best/1/bin
                    std::vector<double> base(xi.size());
                    for (std::size_t j = 0; j < xi.size(); ++j)
                        base[j] = xi[j] + f * (pop.members[b].genes[j] - xi[j]);
                    off[i].genes = de_bin(xi, base, pop.members[r[0]].genes,
                                          pop.members[r[1]].genes, f, mc.de_cr, gen_rng);
                    break;
                }
            }
        }
        evaluate_all(problem, off);
        used += k;
        tr.observe_members(off);

        // success-based quality update (violation-first improvement credit)
        double imp[kStrategies] = {0, 0, 0};
        for (int i = 0; i < k; ++i) {
            const EvalResult& pe = pop.members[parent_of[i]].eval;
            const EvalResult& oe = off[i].eval;
            double gain = (pe.phi > 0.0 || oe.phi > 0.0) ? std::max(0.0, pe.phi - oe.phi)
                                                         : std::max(0.0, pe.f - oe.f);
            imp[strat_of[parent_of[i]]] += gain;
        }
        double tot = imp[0] + imp[1] + imp[2] + 3e-12;
        for (int s = 0; s < kStrategies; ++s)
            quality[s] = 0.5 * quality[s] + 0.5 * (imp[s] + 1e-12) / tot;

        // linear population size reduction
        int n_next = static_cast<int>(std::lround(
            mc.pop_size - (mc.pop_size - kMinPop) *
                              (static_cast<double>(used) / static_cast<double>(mc.budget))));
        n_next = std::clamp(n_next, kMinPop, n);

        // DE-style one-to-one replacement under the violation-first order,
        // then truncation to the reduced size keeping the lex-best members
        for (int i = 0; i < k; ++i)
            if (lex_better(off[i].eval, pop.members[parent_of[i]].eval))
                pop.members[parent_of[i]] = std::move(off[i]);
        std::stable_sort(pop.members.begin(), pop.members.end(),
                         [](const Individual& a, const Individual& b) {
                             return lex_better(a.eval, b.eval);
                         });
        pop.members.resize(n_next);
        ++pop.generation;
        tr.observe(pop);
        tr.log(pop, -1, 0.0, 0.0);
    }
    tr.res.evaluations = used;
    tr.finish(std::move(pop));
    return tr.res;
}

RunResult run_single_op(OptProblem& problem, const MoeaConfig& mc, int op_id, Rng rng) {
    Rng ctx_rng = rng.substream(kStreamContext);
    problem.begin_generation(ctx_rng);
    Rng init_rng = rng.substream(kStreamInit);
    Population pop = init_population(mc.pop_size, problem.dim(), init_rng);
    evaluate_all(problem, pop.members);

    RunTracker tr;
    tr.res.seed = rng.seed();
    tr.observe(pop);
    tr.log(pop, -1, 0.0, 0.0);

    Rng var_base = rng.substream(kStreamVariation);
    long used = 0;
    int n = mc.pop_size;
    while (used < mc.budget) {
        Rng gen_rng = var_base.substream(static_cast<std::uint64_t>(pop.generation));
        Population off = apply_operator(pop, op_id, mc, gen_rng);
        int k = static_cast<int>(std::min<long>(n, mc.budget - used));
        off.members.resize(k);
        evaluate_all(problem, off.members);
        used += k;
        tr.observe_members(off.members);

        std::vector<Individual> pool = std::move(pop.members);
        for (Individual& ind : off.members) pool.push_back(std::move(ind));
        int gen_next = pop.generation + 1;
        pop = environmental_selection(std::move(pool), n);
        pop.generation = gen_next;
        tr.observe(pop);
        tr.log(pop, op_id, 0.0, 0.0);
    }
    tr.res.evaluations = used;
    tr.finish(std::move(pop));
    return tr.res;
}

}  // namespace iscc
