#pragma once

#include <span>
#include <string>
#include <vector>

#include "rheaom/action_set.hpp"
#include "rheaom/engine.hpp"
#include "rheaom/rng.hpp"

namespace rheaom {

enum class ModelKind { None, Random, SL, Q, PG };

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

// Single-layer network: logits = W f + b. Adam moments ride along so training
// can be checkpointed and resumed exactly.
struct LinearSoftmaxModel {
    ModelKind kind = ModelKind::SL;
    int feature_dim = 0;
    int action_count = 0;
    std::vector<double> weights;  // action_count x feature_dim, row-major
    std::vector<double> bias;
    std::vector<double> m_weights, m_bias;
    std::vector<double> v_weights, v_bias;
    int64_t adam_t = 0;

    double& w(int action, int feature) {
        return weights[static_cast<size_t>(action) * feature_dim + feature];
    }
    double w(int action, int feature) const {
        return weights[static_cast<size_t>(action) * feature_dim + feature];
    }
    void logits(std::span<const double> features, std::span<double> out) const;

    bool operator==(const LinearSoftmaxModel&) const = default;
};

// Entries i.i.d. uniform on +-sqrt(6 / (fan_in + fan_out)).
std::vector<double> xavier_init(int fan_in, int fan_out, Rng& rng);
double xavier_bound(int fan_in, int fan_out);

LinearSoftmaxModel make_model(ModelKind kind, int feature_dim, int action_count, Rng& rng);

// Softmax with max subtraction; sums to 1 within 1e-9 for any finite weights.
std::vector<double> policy_distribution(const LinearSoftmaxModel& model,
                                        std::span<const double> features);

struct ModelGrad {
    std::vector<double> weights, bias;
    ModelGrad() = default;
    explicit ModelGrad(const LinearSoftmaxModel& m)
        : weights(m.weights.size(), 0.0), bias(m.bias.size(), 0.0) {}
    bool finite() const;
};

// Standard Adam (beta1 0.9, beta2 0.999, eps 1e-8). Returns false and leaves
// the model untouched when the gradient is not finite.
bool adam_step(LinearSoftmaxModel& model, const ModelGrad& grad, double lr);

struct TransitionRecord {
    FeatureArray features{};   // from the modeled player's perspective
    int action = 0;            // what the modeled player actually did
    double reward = 0.0;       // hp-gap signal at the post-transition state
    bool terminal = false;
    ActionSet legal;           // legal set at the recorded state, for Q bootstrap
};

using RoundDataset = std::vector<TransitionRecord>;

struct TrainConfig {
    double lr = 1e-4;
    double gamma = 0.95;
    int n_step = 5;
    int minibatch = 32;
    int epochs_per_round = 4;
    enum class RewardMode { Absolute, Delta };
    RewardMode reward_mode = RewardMode::Absolute;

    void validate() const;
};

struct TrainStats {
    int adam_steps = 0;
    int skipped_steps = 0;
    double wall_ms = 0.0;
};

// Per-sample losses, exposed for the finite-difference checks.
double cross_entropy_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec);
double q_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec, double target);
double pg_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec, double weighted_return);

// Mean-over-batch gradients for the same losses.
ModelGrad sl_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch);
ModelGrad q_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch,
                     std::span<const double> targets);
ModelGrad pg_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch,
                      std::span<const double> returns);

// Discounted sum of the next N rewards plus a discounted bootstrap: the max
// of the model outputs over the legal actions at the N-th successor, dropped
// when a terminal is reached first. Throws std::out_of_range on a bad t.
double n_step_return(const RoundDataset& dataset, int t, int n_steps, double gamma,
                     const LinearSoftmaxModel& model);

// Monte-Carlo returns R_t = sum_{l>=t} gamma^(l-t) r_l for a full episode.
std::vector<double> episode_returns(const RoundDataset& dataset, double gamma);

TrainStats train_sl(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                    Rng& rng);
TrainStats train_q(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                   Rng& rng);
TrainStats train_pg(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                    Rng& rng);

// Hp gap from the modeled player's side, in [-1, 1].
double reward_signal(const GameState& next_state, Player modeled_player);

// One-step action inference plus the training hook used between rounds.
class OpponentModel {
public:
    OpponentModel(ModelKind kind, int neutral_action) : kind_(kind), neutral_action_(neutral_action) {}
    OpponentModel(LinearSoftmaxModel net, int neutral_action, uint64_t seed = 0)
        : kind_(net.kind), neutral_action_(neutral_action), net_(std::move(net)), rng_(seed) {}

    static OpponentModel make(ModelKind kind, const Ruleset& rules, uint64_t seed);

    ModelKind kind() const { return kind_; }
    bool learnable() const {
        return kind_ == ModelKind::SL || kind_ == ModelKind::Q || kind_ == ModelKind::PG;
    }
    const LinearSoftmaxModel& net() const { return net_; }
    LinearSoftmaxModel& net() { return net_; }
    void reseed(uint64_t seed) { rng_.reseed(seed); }

    int predict(const FeatureArray& features, const ActionSet& legal);

    // Trains on the finished round's dataset, then clears it.
    TrainStats end_of_round(RoundDataset& dataset, const TrainConfig& cfg, Rng& train_rng);

private:
    ModelKind kind_;
    int neutral_action_;
    LinearSoftmaxModel net_;
    Rng rng_;
};

}  // namespace rheaom
