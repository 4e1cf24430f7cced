#include "rheaom/opponent_model.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace rheaom {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kEps = 1e-8;

void shuffle_indices(std::vector<int>& idx, Rng& rng) {
    for (int i = static_cast<int>(idx.size()) - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(i + 1)));
        std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    }
}

double max_logit_over(const std::vector<double>& logits, const ActionSet& legal) {
    double best = -1e300;
    for (int id : legal.view()) best = std::max(best, logits[static_cast<size_t>(id)]);
    return best;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::None: return "none";
        case ModelKind::Random: return "random";
        case ModelKind::SL: return "sl";
        case ModelKind::Q: return "q";
        case ModelKind::PG: return "pg";
    }
    return "none";
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "none") return ModelKind::None;
    if (name == "random") return ModelKind::Random;
    if (name == "sl") return ModelKind::SL;
    if (name == "q") return ModelKind::Q;
    if (name == "pg") return ModelKind::PG;
    throw std::invalid_argument("unknown opponent model kind: " + name);
}

void LinearSoftmaxModel::logits(std::span<const double> features, std::span<double> out) const {
    for (int a = 0; a < action_count; ++a) {
        double z = bias[static_cast<size_t>(a)];
        const double* row = &weights[static_cast<size_t>(a) * feature_dim];
        for (int j = 0; j < feature_dim; ++j) z += row[j] * features[static_cast<size_t>(j)];
        out[static_cast<size_t>(a)] = z;
    }
}

double xavier_bound(int fan_in, int fan_out) { return std::sqrt(6.0 / (fan_in + fan_out)); }

std::vector<double> xavier_init(int fan_in, int fan_out, Rng& rng) {
    if (fan_in <= 0 || fan_out <= 0) throw std::invalid_argument("xavier_init: non-positive dims");
    const double bound = xavier_bound(fan_in, fan_out);
    std::vector<double> w(static_cast<size_t>(fan_in) * fan_out);
    for (double& v : w) v = rng.uniform(-bound, bound);
    return w;
}

LinearSoftmaxModel make_model(ModelKind kind, int feature_dim, int action_count, Rng& rng) {
    LinearSoftmaxModel m;
    m.kind = kind;
    m.feature_dim = feature_dim;
    m.action_count = action_count;
    m.weights = xavier_init(feature_dim, action_count, rng);
    m.bias.assign(static_cast<size_t>(action_count), 0.0);
    m.m_weights.assign(m.weights.size(), 0.0);
    m.v_weights.assign(m.weights.size(), 0.0);
    m.m_bias.assign(m.bias.size(), 0.0);
    m.v_bias.assign(m.bias.size(), 0.0);
    m.adam_t = 0;
    return m;
}

std::vector<double> policy_distribution(const LinearSoftmaxModel& model,
                                        std::span<const double> features) {
    if (model.kind != ModelKind::SL && model.kind != ModelKind::PG)
        throw std::invalid_argument("policy_distribution: model kind has no distribution");
    std::vector<double> z(static_cast<size_t>(model.action_count));
    model.logits(features, z);
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (double& v : z) v /= sum;
    return z;
}

bool ModelGrad::finite() const {
    auto ok = [](const std::vector<double>& v) {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    return ok(weights) && ok(bias);
}

bool adam_step(LinearSoftmaxModel& model, const ModelGrad& grad, double lr) {
    if (!grad.finite()) return false;
    model.adam_t += 1;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(model.adam_t));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(model.adam_t));
    auto update = [&](std::vector<double>& theta, std::vector<double>& m, std::vector<double>& v,
                      const std::vector<double>& g) {
        for (size_t i = 0; i < theta.size(); ++i) {
            m[i] = kBeta1 * m[i] + (1.0 - kBeta1) * g[i];
            v[i] = kBeta2 * v[i] + (1.0 - kBeta2) * g[i] * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            theta[i] -= lr * mhat / (std::sqrt(vhat) + kEps);
        }
    };
    update(model.weights, model.m_weights, model.v_weights, grad.weights);
    update(model.bias, model.m_bias, model.v_bias, grad.bias);
    return true;
}

void TrainConfig::validate() const {
    if (lr <= 0) throw std::invalid_argument("train.lr must be positive");
    if (gamma <= 0 || gamma > 1) throw std::invalid_argument("train.gamma must be in (0, 1]");
    if (n_step < 1) throw std::invalid_argument("train.n_step must be >= 1");
    if (minibatch < 1) throw std::invalid_argument("train.minibatch must be >= 1");
    if (epochs_per_round < 1) throw std::invalid_argument("train.epochs_per_round must be >= 1");
}

double cross_entropy_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec) {
    const auto q = policy_distribution(model, rec.features);
    return -std::log(std::max(q[static_cast<size_t>(rec.action)], 1e-300));
}

double q_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec, double target) {
    std::vector<double> z(static_cast<size_t>(model.action_count));
    model.logits(rec.features, z);
    const double err = target - z[static_cast<size_t>(rec.action)];
    return err * err;
}

double pg_loss(const LinearSoftmaxModel& model, const TransitionRecord& rec,
               double weighted_return) {
    const auto q = policy_distribution(model, rec.features);
    return -weighted_return * std::log(std::max(q[static_cast<size_t>(rec.action)], 1e-300));
}

namespace {

// Adds w * (q - onehot(action)) f^T to the gradient, the shared shape of the
// cross-entropy and policy-gradient updates.
void add_softmax_grad(const LinearSoftmaxModel& model, const TransitionRecord& rec, double w,
                      ModelGrad& grad) {
    std::vector<double> z(static_cast<size_t>(model.action_count));
    model.logits(rec.features, z);
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        sum += v;
    }
    for (int a = 0; a < model.action_count; ++a) {
        double d = z[static_cast<size_t>(a)] / sum;
        if (a == rec.action) d -= 1.0;
        d *= w;
        grad.bias[static_cast<size_t>(a)] += d;
        double* row = &grad.weights[static_cast<size_t>(a) * model.feature_dim];
        for (int j = 0; j < model.feature_dim; ++j) row[j] += d * rec.features[static_cast<size_t>(j)];
    }
}

}  // namespace

ModelGrad sl_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch) {
    ModelGrad grad(model);
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (const auto& rec : batch) add_softmax_grad(model, rec, scale, grad);
    return grad;
}

ModelGrad q_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch,
                     std::span<const double> targets) {
    ModelGrad grad(model);
    const double scale = 1.0 / static_cast<double>(batch.size());
    std::vector<double> z(static_cast<size_t>(model.action_count));
    for (size_t i = 0; i < batch.size(); ++i) {
        const auto& rec = batch[i];
        model.logits(rec.features, z);
        const double d = 2.0 * (z[static_cast<size_t>(rec.action)] - targets[i]) * scale;
        grad.bias[static_cast<size_t>(rec.action)] += d;
        double* row = &grad.weights[static_cast<size_t>(rec.action) * model.feature_dim];
        for (int j = 0; j < model.feature_dim; ++j) row[j] += d * rec.features[static_cast<size_t>(j)];
    }
    return grad;
}

ModelGrad pg_gradient(const LinearSoftmaxModel& model, std::span<const TransitionRecord> batch,
                      std::span<const double> returns) {
    ModelGrad grad(model);
    const double scale = 1.0 / static_cast<double>(batch.size());
    for (size_t i = 0; i < batch.size(); ++i)
        add_softmax_grad(model, batch[i], returns[i] * scale, grad);
    return grad;
}

double n_step_return(const RoundDataset& dataset, int t, int n_steps, double gamma,
                     const LinearSoftmaxModel& model) {
    const int size = static_cast<int>(dataset.size());
    if (t < 0 || t >= size) throw std::out_of_range("n_step_return: t outside the dataset");
    double g = 0.0;
    double discount = 1.0;
    for (int j = 0; j < n_steps; ++j) {
        const int idx = t + j;
        if (idx >= size) return g;  // data ran out: missing tail contributes zero
        g += discount * dataset[static_cast<size_t>(idx)].reward;
        if (dataset[static_cast<size_t>(idx)].terminal) return g;
        discount *= gamma;
    }
    const int boot = t + n_steps;
    if (boot >= size) return g;
    std::vector<double> z(static_cast<size_t>(model.action_count));
    model.logits(dataset[static_cast<size_t>(boot)].features, z);
    return g + discount * max_logit_over(z, dataset[static_cast<size_t>(boot)].legal);
}

std::vector<double> episode_returns(const RoundDataset& dataset, double gamma) {
    std::vector<double> r(dataset.size(), 0.0);
    double acc = 0.0;
    for (int i = static_cast<int>(dataset.size()) - 1; i >= 0; --i) {
        acc = dataset[static_cast<size_t>(i)].reward + gamma * acc;
        r[static_cast<size_t>(i)] = acc;
    }
    return r;
}

namespace {

// Shared epoch/minibatch loop. make_grad(indices) -> ModelGrad.
template <typename MakeGrad, typename PerEpoch>
TrainStats minibatch_train(LinearSoftmaxModel& model, int dataset_size, const TrainConfig& cfg,
                           Rng& rng, PerEpoch per_epoch, MakeGrad make_grad) {
    TrainStats stats;
    const auto start = Clock::now();
    std::vector<int> order(static_cast<size_t>(dataset_size));
    for (int i = 0; i < dataset_size; ++i) order[static_cast<size_t>(i)] = i;
    for (int epoch = 0; epoch < cfg.epochs_per_round; ++epoch) {
        per_epoch();
        shuffle_indices(order, rng);
        for (int begin = 0; begin < dataset_size; begin += cfg.minibatch) {
            const int end = std::min(dataset_size, begin + cfg.minibatch);
            const ModelGrad grad = make_grad(std::span<const int>(order).subspan(
                static_cast<size_t>(begin), static_cast<size_t>(end - begin)));
            if (adam_step(model, grad, cfg.lr))
                ++stats.adam_steps;
            else
                ++stats.skipped_steps;
        }
    }
    stats.wall_ms = ms_since(start);
    return stats;
}

std::vector<TransitionRecord> gather(const RoundDataset& dataset, std::span<const int> idx) {
    std::vector<TransitionRecord> batch;
    batch.reserve(idx.size());
    for (int i : idx) batch.push_back(dataset[static_cast<size_t>(i)]);
    return batch;
}

}  // namespace

TrainStats train_sl(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                    Rng& rng) {
    if (model.kind != ModelKind::SL) throw std::invalid_argument("train_sl: wrong model kind");
    if (dataset.empty()) return {};
    return minibatch_train(
        model, static_cast<int>(dataset.size()), cfg, rng, [] {},
        [&](std::span<const int> idx) { return sl_gradient(model, gather(dataset, idx)); });
}

TrainStats train_q(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                   Rng& rng) {
    if (model.kind != ModelKind::Q) throw std::invalid_argument("train_q: wrong model kind");
    if (dataset.empty()) return {};
    // Targets are recomputed from a frozen copy at the top of every epoch.
    std::vector<double> targets(dataset.size(), 0.0);
    auto refresh_targets = [&] {
        const LinearSoftmaxModel frozen = model;
        for (size_t t = 0; t < dataset.size(); ++t)
            targets[t] = n_step_return(dataset, static_cast<int>(t), cfg.n_step, cfg.gamma, frozen);
    };
    return minibatch_train(model, static_cast<int>(dataset.size()), cfg, rng, refresh_targets,
                           [&](std::span<const int> idx) {
                               std::vector<double> batch_targets;
                               batch_targets.reserve(idx.size());
                               for (int i : idx) batch_targets.push_back(targets[static_cast<size_t>(i)]);
                               return q_gradient(model, gather(dataset, idx), batch_targets);
                           });
}

TrainStats train_pg(LinearSoftmaxModel& model, const RoundDataset& dataset, const TrainConfig& cfg,
                    Rng& rng) {
    if (model.kind != ModelKind::PG) throw std::invalid_argument("train_pg: wrong model kind");
    if (dataset.empty()) return {};
    const std::vector<double> returns = episode_returns(dataset, cfg.gamma);
    return minibatch_train(model, static_cast<int>(dataset.size()), cfg, rng, [] {},
                           [&](std::span<const int> idx) {
                               std::vector<double> batch_returns;
                               batch_returns.reserve(idx.size());
                               for (int i : idx) batch_returns.push_back(returns[static_cast<size_t>(i)]);
                               return pg_gradient(model, gather(dataset, idx), batch_returns);
                           });
}

double reward_signal(const GameState& next_state, Player modeled_player) {
    const int hp_modeled = next_state.fighter(modeled_player).hp;
    const int hp_other = next_state.fighter(other(modeled_player)).hp;
    return static_cast<double>(hp_modeled - hp_other) / next_state.max_hp;
}

OpponentModel OpponentModel::make(ModelKind kind, const Ruleset& rules, uint64_t seed) {
    const int neutral = rules.character.neutral_action;
    if (kind == ModelKind::None || kind == ModelKind::Random) {
        OpponentModel om(kind, neutral);
        om.rng_.reseed(seed);
        return om;
    }
    Rng init_rng(seed);
    LinearSoftmaxModel net = make_model(kind, kFeatureCount, rules.action_count(), init_rng);
    return OpponentModel(std::move(net), neutral, Rng::derive(seed, 1));
}

int OpponentModel::predict(const FeatureArray& features, const ActionSet& legal) {
    if (legal.empty()) throw std::invalid_argument("predict: empty legal set");
    switch (kind_) {
        case ModelKind::None:
            return neutral_action_;
        case ModelKind::Random:
            return legal.ids[rng_.uniform_int(static_cast<uint32_t>(legal.count))];
        case ModelKind::SL:
        case ModelKind::PG:
        case ModelKind::Q: {
            // Softmax is monotone, so the restricted argmax over the raw
            // outputs matches the restricted argmax over the distribution,
            // tie-break included.
            std::array<double, kMaxActions> z;
            net_.logits(features, std::span<double>(z.data(), static_cast<size_t>(net_.action_count)));
            int best = legal.view().front();
            for (int id : legal.view())
                if (z[static_cast<size_t>(id)] > z[static_cast<size_t>(best)]) best = id;
            return best;
        }
    }
    return neutral_action_;
}

TrainStats OpponentModel::end_of_round(RoundDataset& dataset, const TrainConfig& cfg,
                                       Rng& train_rng) {
    TrainStats stats;
    const auto start = Clock::now();
    switch (kind_) {
        case ModelKind::SL: stats = train_sl(net_, dataset, cfg, train_rng); break;
        case ModelKind::Q: stats = train_q(net_, dataset, cfg, train_rng); break;
        case ModelKind::PG: stats = train_pg(net_, dataset, cfg, train_rng); break;
        case ModelKind::None:
        case ModelKind::Random: break;
    }
    dataset.clear();
    stats.wall_ms = ms_since(start);
    return stats;
}

}  // namespace rheaom
