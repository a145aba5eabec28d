#pragma once

#include <array>
#include <vector>

#include "iscc/moea.hpp"

namespace iscc {

/// Fully-connected net with rectified hidden layers and a linear output
/// layer. Small enough that plain arrays and SGD are all we need; gradients
/// are exact backprop (finite-difference checkable).
class Mlp {
public:
    struct Layer {
        int in = 0;
        int out = 0;
        std::vector<double> w;  // row-major, out x in
        std::vector<double> b;
    };

    Mlp() = default;
    explicit Mlp(const std::vector<int>& sizes);

    void randomize(Rng& rng, double scale = 0.1);

    std::vector<double> forward(const std::vector<double>& x) const;

    /// Accumulates parameter gradients for dL/d(output) at input x into
    /// `grad` (same shape as the net, see zero_grad_like).
    void backward(const std::vector<double>& x, const std::vector<double>& dout,
                  std::vector<Layer>& grad) const;

    std::vector<Layer> zero_grad_like() const;
    void sgd_step(const std::vector<Layer>& grad, double lr);

    std::vector<Layer>& layers() { return layers_; }
    const std::vector<Layer>& layers() const { return layers_; }

private:
    std::vector<Layer> layers_;
};

struct ReplayRecord {
    std::array<double, 3> state{};       // (con, fea, div), normalized
    int op = 0;
    double reward = 0.0;
    std::array<double, 3> next_state{};
};

/// Fixed-capacity FIFO ring.
class ReplayBuffer {
public:
    explicit ReplayBuffer(int capacity) : capacity_(capacity) {}

    void push(const ReplayRecord& rec);
    int size() const { return static_cast<int>(data_.size()); }
    int capacity() const { return capacity_; }
    const ReplayRecord& operator[](int i) const { return data_[i]; }

    std::vector<ReplayRecord> sample(int n, Rng& rng) const;

private:
    int capacity_;
    int cursor_ = 0;
    std::vector<ReplayRecord> data_;
};

/// epsilon-greedy over the enabled actions; greedy ties break to the lowest
/// index. `enabled` must have at least one true entry.
int select_action(const std::vector<double>& qvals, double eps, const std::array<bool, 4>& enabled,
                  Rng& rng);

double td_target(const ReplayRecord& rec, const Mlp& target_net, double discount);

/// One MSE gradient-descent step on the online net; returns the batch loss.
double train_step(Mlp& net, const Mlp& target_net, const std::vector<ReplayRecord>& batch,
                  double discount, double lr);

/// Scalarized population-state reward: positive when con/fea/div all drop.
double state_reward(const PopulationState& prev, const PopulationState& next, const DqnConfig& dc);

/// DQN-guided MOEA: per generation the agent picks one variation operator
/// from the population state (con, fea, div); offspring and selection reuse
/// the moea_core machinery and substream layout, so a single enabled operator
/// reproduces run_single_op exactly.
RunResult run_dqn_moea(OptProblem& problem, const MoeaConfig& mc, const DqnConfig& dc, Rng rng);

}  // namespace iscc
