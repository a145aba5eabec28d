#include "iscc/dqn.hpp"

#include <algorithm>
#include <cmath>

#include "iscc/errors.hpp"

namespace iscc {

namespace {

// Must match the layout in moea.cpp so that run_dqn_moea with one enabled
// operator reproduces run_single_op exactly (the agent draws from its own
// stream).
constexpr std::uint64_t kStreamContext = 1;
constexpr std::uint64_t kStreamInit = 2;
constexpr std::uint64_t kStreamVariation = 3;
constexpr std::uint64_t kStreamAgent = 4;

void check_finite(const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) throw InvalidParameter("Mlp: non-finite input");
}

}  // namespace

Mlp::Mlp(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw InvalidParameter("Mlp: need at least input and output sizes");
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        Layer l;
        l.in = sizes[i];
        l.out = sizes[i + 1];
        l.w.assign(static_cast<std::size_t>(l.in) * l.out, 0.0);
        l.b.assign(l.out, 0.0);
        layers_.push_back(std::move(l));
    }
}

void Mlp::randomize(Rng& rng, double scale) {
    for (Layer& l : layers_) {
        double s = scale / std::sqrt(static_cast<double>(l.in));
        for (double& v : l.w) v = s * rng.gaussian();
        for (double& v : l.b) v = 0.0;
    }
}

std::vector<double> Mlp::forward(const std::vector<double>& x) const {
    check_finite(x);
    std::vector<double> a = x;
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const Layer& l = layers_[li];
        std::vector<double> z(l.out);
        for (int o = 0; o < l.out; ++o) {
            double acc = l.b[o];
            const double* row = &l.w[static_cast<std::size_t>(o) * l.in];
            for (int i = 0; i < l.in; ++i) acc += row[i] * a[i];
            z[o] = acc;
        }
        if (li + 1 < layers_.size())
            for (double& v : z) v = std::max(0.0, v);  // ReLU on hidden layers
        a = std::move(z);
    }
    return a;
}

void Mlp::backward(const std::vector<double>& x, const std::vector<double>& dout,
                   std::vector<Layer>& grad) const {
    // forward pass with cached pre/post activations
    std::vector<std::vector<double>> acts;  // acts[0] = input, acts[k] = layer k output
    std::vector<std::vector<double>> pre;   // pre-activation of each layer
    acts.push_back(x);
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        const Layer& l = layers_[li];
        std::vector<double> z(l.out);
        for (int o = 0; o < l.out; ++o) {
            double acc = l.b[o];
            const double* row = &l.w[static_cast<std::size_t>(o) * l.in];
            for (int i = 0; i < l.in; ++i) acc += row[i] * acts.back()[i];
            z[o] = acc;
        }
        pre.push_back(z);
        if (li + 1 < layers_.size())
            for (double& v : z) v = std::max(0.0, v);
        acts.push_back(std::move(z));
    }

    std::vector<double> delta = dout;
    for (int li = static_cast<int>(layers_.size()) - 1; li >= 0; --li) {
        const Layer& l = layers_[li];
        if (li + 1 < static_cast<int>(layers_.size()))
            for (int o = 0; o < l.out; ++o)
                if (pre[li][o] <= 0.0) delta[o] = 0.0;  // ReLU gate
        Layer& g = grad[li];
        const std::vector<double>& a_in = acts[li];
        for (int o = 0; o < l.out; ++o) {
            g.b[o] += delta[o];
            double* grow = &g.w[static_cast<std::size_t>(o) * l.in];
            for (int i = 0; i < l.in; ++i) grow[i] += delta[o] * a_in[i];
        }
        if (li > 0) {
            std::vector<double> prev(l.in, 0.0);
            for (int o = 0; o < l.out; ++o) {
                const double* row = &l.w[static_cast<std::size_t>(o) * l.in];
                for (int i = 0; i < l.in; ++i) prev[i] += row[i] * delta[o];
            }
            delta = std::move(prev);
        }
    }
}

std::vector<Mlp::Layer> Mlp::zero_grad_like() const {
    std::vector<Layer> g = layers_;
    for (Layer& l : g) {
        std::fill(l.w.begin(), l.w.end(), 0.0);
        std::fill(l.b.begin(), l.b.end(), 0.0);
    }
    return g;
}

void Mlp::sgd_step(const std::vector<Layer>& grad, double lr) {
    for (std::size_t li = 0; li < layers_.size(); ++li) {
        Layer& l = layers_[li];
        const Layer& g = grad[li];
        for (std::size_t k = 0; k < l.w.size(); ++k) l.w[k] -= lr * g.w[k];
        for (std::size_t k = 0; k < l.b.size(); ++k) l.b[k] -= lr * g.b[k];
    }
}

void ReplayBuffer::push(const ReplayRecord& rec) {
    if (size() < capacity_) {
        data_.push_back(rec);
    } else {
        data_[cursor_] = rec;  // FIFO overwrite
    }
    cursor_ = (cursor_ + 1) % capacity_;
}

std::vector<ReplayRecord> ReplayBuffer::sample(int n, Rng& rng) const {
    std::vector<ReplayRecord> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(data_[rng.uniform_int(size())]);
    return out;
}

int select_action(const std::vector<double>& qvals, double eps, const std::array<bool, 4>& enabled,
                  Rng& rng) {
    std::vector<int> avail;
    for (int a = 0; a < static_cast<int>(qvals.size()) && a < 4; ++a)
        if (enabled[a]) avail.push_back(a);
    if (avail.empty()) throw InvalidParameter("select_action: no enabled operators");
    if (rng.uniform() < eps) return avail[rng.uniform_int(static_cast<int>(avail.size()))];
    int best = avail[0];
    for (int a : avail)
        if (qvals[a] > qvals[best]) best = a;
    return best;
}

double td_target(const ReplayRecord& rec, const Mlp& target_net, double discount) {
    std::vector<double> q =
        target_net.forward({rec.next_state[0], rec.next_state[1], rec.next_state[2]});
    return rec.reward + discount * *std::max_element(q.begin(), q.end());
}

double train_step(Mlp& net, const Mlp& target_net, const std::vector<ReplayRecord>& batch,
                  double discount, double lr) {
    if (batch.empty()) throw InvalidParameter("train_step: empty batch");
    std::vector<Mlp::Layer> grad = net.zero_grad_like();
    double loss = 0.0;
    double inv = 1.0 / batch.size();
    for (const ReplayRecord& rec : batch) {
        std::vector<double> s = {rec.state[0], rec.state[1], rec.state[2]};
        std::vector<double> q = net.forward(s);
        double err = q[rec.op] - td_target(rec, target_net, discount);
        loss += err * err * inv;
        std::vector<double> dout(q.size(), 0.0);
        dout[rec.op] = 2.0 * err * inv;
        net.backward(s, dout, grad);
    }
    net.sgd_step(grad, lr);
    return loss;
}

double state_reward(const PopulationState& prev, const PopulationState& next, const DqnConfig& dc) {
    return dc.w_con * (prev.con - next.con) + dc.w_fea * (prev.fea - next.fea) +
           dc.w_div * (prev.div - next.div);
}

namespace {

struct StateNormalizer {
    double max_con = 1e-12;
    double max_fea = 1e-12;

    std::array<double, 3> norm(const PopulationState& st) {
        max_con = std::max(max_con, std::abs(st.con));
        max_fea = std::max(max_fea, std::abs(st.fea));
        return {st.con / max_con, st.fea / max_fea, std::clamp(st.div, 0.0, 1e3)};
    }
};

}  // namespace

RunResult run_dqn_moea(OptProblem& problem, const MoeaConfig& mc, const DqnConfig& dc, Rng rng) {
    Rng ctx_rng = rng.substream(kStreamContext);
    problem.begin_generation(ctx_rng);
    Rng init_rng = rng.substream(kStreamInit);
    Population pop = init_population(mc.pop_size, problem.dim(), init_rng);
    evaluate_all(problem, pop.members);

    struct Tracker {
        RunResult res;
        void observe(const std::vector<Individual>& members) {
            for (const Individual& ind : members) {
                if (!res.best.evaluated || lex_better(ind.eval, res.best.eval)) res.best = ind;
                if (ind.eval.feasible && ind.eval.f < res.best_f) {
                    res.best_f = ind.eval.f;
                    res.has_feasible = true;
                }
            }
        }
    } tr;
    tr.res.seed = rng.seed();
    tr.observe(pop.members);

    PopulationState st = population_state(pop);
    tr.res.log.push_back({0, st.con, st.fea, st.div, tr.res.best_f, -1, 0.0, 0.0});

    Rng var_base = rng.substream(kStreamVariation);
    Rng agent_rng = rng.substream(kStreamAgent);

    Mlp online({3, dc.hidden, dc.hidden, 4});
    online.randomize(agent_rng);
    Mlp target = online;
    ReplayBuffer buffer(dc.buffer);
    StateNormalizer nz;
    std::array<double, 3> s_norm = nz.norm(st);

    long used = 0;
    int n = mc.pop_size;
    int train_steps = 0;
    while (used < mc.budget) {
        double frac = static_cast<double>(used) / static_cast<double>(mc.budget);
        double eps = dc.eps_start +
                     (dc.eps_end - dc.eps_start) * std::min(1.0, frac / dc.eps_decay_frac);

        int op;
        if (buffer.size() < dc.warmup_records) {
            op = select_action(std::vector<double>(4, 0.0), 1.0, mc.operators, agent_rng);
        } else {
            std::vector<double> q = online.forward({s_norm[0], s_norm[1], s_norm[2]});
            op = select_action(q, eps, mc.operators, agent_rng);
        }

        Rng gen_rng = var_base.substream(static_cast<std::uint64_t>(pop.generation));
        Population off = apply_operator(pop, op, mc, gen_rng);
        int k = static_cast<int>(std::min<long>(n, mc.budget - used));
        off.members.resize(k);
        evaluate_all(problem, off.members);
        used += k;
        tr.observe(off.members);

        std::vector<Individual> pool = std::move(pop.members);
        for (Individual& ind : off.members) pool.push_back(std::move(ind));
        int gen_next = pop.generation + 1;
        pop = environmental_selection(std::move(pool), n);
        pop.generation = gen_next;

        PopulationState st_next = population_state(pop);
        std::array<double, 3> s_next = nz.norm(st_next);
        // Guarded: con swings by ~1e6 while unstable-queue sentinels leave
        // the population, and div (an inverse range) explodes if the
        // objective ranges ever collapse; the div terms share the state clip
        // and the total is clamped so TD updates stay bounded.
        PopulationState pc = st;
        PopulationState nc = st_next;
        pc.div = std::clamp(pc.div, 0.0, 1e3);
        nc.div = std::clamp(nc.div, 0.0, 1e3);
        double reward = std::clamp(state_reward(pc, nc, dc), -10.0, 10.0);
        buffer.push({s_norm, op, reward, s_next});

        double loss = 0.0;
        if (buffer.size() >= std::max(dc.batch, dc.warmup_records)) {
            // a few SGD steps per generation: generations are expensive
            // relative to training, and a faster-converging Q cuts the number
            // of mispicked operators
            for (int t = 0; t < 3; ++t) {
                std::vector<ReplayRecord> batch = buffer.sample(dc.batch, agent_rng);
                loss = train_step(online, target, batch, dc.discount, dc.learning_rate);
                if (++train_steps % dc.target_sync == 0) target = online;
            }
        }

        st = st_next;
        s_norm = s_next;
        tr.res.log.push_back({pop.generation, st.con, st.fea, st.div, tr.res.best_f, op, reward,
                              loss});
    }
    tr.res.evaluations = used;
    tr.res.front = pareto_front(pop);
    tr.res.final_pop = std::move(pop);
    return tr.res;
}

}  // namespace iscc
