#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rheaom/opponent_model.hpp"

using namespace rheaom;

namespace {

ActionSet all_actions(int count) {
    ActionSet set;
    for (int i = 0; i < count; ++i) set.add(i);
    return set;
}

FeatureArray features_of(std::initializer_list<double> values) {
    FeatureArray f{};
    size_t i = 0;
    for (double v : values) f[i++] = v;
    return f;
}

TransitionRecord record(const FeatureArray& f, int action, double reward, bool terminal,
                        int action_count) {
    TransitionRecord rec;
    rec.features = f;
    rec.action = action;
    rec.reward = reward;
    rec.terminal = terminal;
    rec.legal = all_actions(action_count);
    return rec;
}

LinearSoftmaxModel small_random_model(ModelKind kind, Rng& rng, int f = 3, int a = 4) {
    return make_model(kind, f, a, rng);
}

RoundDataset random_dataset(Rng& rng, int size, int f = 3, int a = 4) {
    RoundDataset data;
    for (int i = 0; i < size; ++i) {
        FeatureArray feat{};
        for (int j = 0; j < f; ++j) feat[static_cast<size_t>(j)] = rng.uniform01();
        data.push_back(record(feat, static_cast<int>(rng.uniform_int(static_cast<uint32_t>(a))),
                              rng.uniform(-1.0, 1.0), i + 1 == size, a));
    }
    return data;
}

}  // namespace

TEST_CASE("xavier bounds and determinism") {
    CHECK(xavier_bound(18, 56) == doctest::Approx(0.2847473987).epsilon(1e-8));

    Rng rng(42);
    const auto w = xavier_init(18, 56, rng);
    CHECK(w.size() == 18u * 56u);
    const double bound = xavier_bound(18, 56);
    for (double v : w) {
        CHECK(v >= -bound);
        CHECK(v <= bound);
    }

    Rng rng2(42);
    CHECK(xavier_init(18, 56, rng2) == w);

    CHECK_THROWS_AS(xavier_init(0, 5, rng), std::invalid_argument);
}

TEST_CASE("models start with zero bias and fresh moments") {
    Rng rng(1);
    const LinearSoftmaxModel m = make_model(ModelKind::SL, 18, 16, rng);
    for (double b : m.bias) CHECK(b == 0.0);
    for (double v : m.v_weights) CHECK(v == 0.0);
    CHECK(m.adam_t == 0);
}

TEST_CASE("policy distribution is a stable softmax") {
    Rng rng(2);
    LinearSoftmaxModel m = make_model(ModelKind::SL, 18, 56, rng);

    SUBCASE("zero parameters give the uniform distribution") {
        std::fill(m.weights.begin(), m.weights.end(), 0.0);
        const auto dist = policy_distribution(m, features_of({0.3, 0.7}));
        for (double p : dist) CHECK(p == doctest::Approx(1.0 / 56).epsilon(1e-12));
    }

    SUBCASE("constant logit shifts leave the distribution unchanged") {
        const FeatureArray f = features_of({0.5, 0.25, 1.0});
        const auto before = policy_distribution(m, f);
        for (double& b : m.bias) b += 10.0;
        const auto after = policy_distribution(m, f);
        for (size_t i = 0; i < before.size(); ++i)
            CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-9));
    }

    SUBCASE("a +10 logit dominates even 56 actions") {
        std::fill(m.weights.begin(), m.weights.end(), 0.0);
        m.bias[17] = 10.0;
        const auto dist = policy_distribution(m, features_of({}));
        CHECK(dist[17] > 0.99);
    }

    SUBCASE("sums to one within 1e-9 for arbitrary finite weights") {
        for (int trial = 0; trial < 50; ++trial) {
            for (double& w : m.weights) w = rng.uniform(-1e3, 1e3);
            for (double& b : m.bias) b = rng.uniform(-1e3, 1e3);
            FeatureArray f{};
            for (double& v : f) v = rng.uniform01();
            const auto dist = policy_distribution(m, f);
            double sum = 0.0;
            for (double p : dist) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(std::abs(sum - 1.0) < 1e-9);
        }
    }

    SUBCASE("kinds without a distribution are rejected") {
        m.kind = ModelKind::Q;
        CHECK_THROWS_AS(policy_distribution(m, features_of({})), std::invalid_argument);
    }
}

TEST_CASE("prediction honors kind, legality and tie-breaks") {
    const Ruleset rules = make_ruleset(character_preset("balanced"));
    const FeatureArray f = features_of({0.5, 0.5});

    SUBCASE("the None model always plays the neutral no-op") {
        OpponentModel om = OpponentModel::make(ModelKind::None, rules, 7);
        CHECK(om.predict(f, all_actions(16)) == rules.character.neutral_action);
    }

    SUBCASE("the Random model is a seeded uniform draw over the legal set") {
        OpponentModel a = OpponentModel::make(ModelKind::Random, rules, 7);
        OpponentModel b = OpponentModel::make(ModelKind::Random, rules, 7);
        ActionSet legal;
        legal.add(3);
        legal.add(8);
        legal.add(12);
        for (int i = 0; i < 100; ++i) {
            const int x = a.predict(f, legal);
            CHECK(x == b.predict(f, legal));
            CHECK(legal.contains(x));
        }
    }

    SUBCASE("zeroed learned models tie-break to the lowest legal id") {
        Rng rng(3);
        LinearSoftmaxModel net = make_model(ModelKind::SL, kFeatureCount, 16, rng);
        std::fill(net.weights.begin(), net.weights.end(), 0.0);
        OpponentModel om(net, 0, 1);
        ActionSet legal;
        legal.add(4);
        legal.add(9);
        CHECK(om.predict(f, legal) == 4);
    }

    SUBCASE("a singleton legal set wins regardless of the model") {
        Rng rng(3);
        OpponentModel om(make_model(ModelKind::Q, kFeatureCount, 16, rng), 0, 1);
        ActionSet legal;
        legal.add(7);
        CHECK(om.predict(f, legal) == 7);
        CHECK_THROWS_AS(om.predict(f, ActionSet{}), std::invalid_argument);
    }

    SUBCASE("shifting every logit by a constant keeps the argmax") {
        Rng rng(5);
        LinearSoftmaxModel net = make_model(ModelKind::PG, kFeatureCount, 16, rng);
        OpponentModel om(net, 0, 1);
        const int before = om.predict(f, all_actions(16));
        for (double& b : om.net().bias) b += 3.25;
        CHECK(om.predict(f, all_actions(16)) == before);
    }
}

TEST_CASE("adam updates follow the closed form") {
    Rng rng(9);
    LinearSoftmaxModel m = make_model(ModelKind::SL, 1, 1, rng);
    const double w0 = m.weights[0];

    SUBCASE("first step moves by about lr in the gradient direction") {
        ModelGrad g(m);
        g.weights[0] = 0.37;
        CHECK(adam_step(m, g, 1e-4));
        const double expected = w0 - 1e-4 * 0.37 / (std::sqrt(0.37 * 0.37) + 1e-8);
        CHECK(m.weights[0] == doctest::Approx(expected).epsilon(1e-15));
        CHECK(m.adam_t == 1);
    }

    SUBCASE("zero gradients leave parameters untouched") {
        ModelGrad g(m);
        CHECK(adam_step(m, g, 1e-4));
        CHECK(m.weights[0] == w0);
    }

    SUBCASE("non-finite gradients are skipped") {
        ModelGrad g(m);
        g.weights[0] = std::numeric_limits<double>::quiet_NaN();
        CHECK_FALSE(adam_step(m, g, 1e-4));
        CHECK(m.weights[0] == w0);
        CHECK(m.adam_t == 0);
    }

    SUBCASE("identical inputs give bit-identical trajectories") {
        Rng r1(4), r2(4);
        LinearSoftmaxModel a = make_model(ModelKind::SL, 3, 4, r1);
        LinearSoftmaxModel b = make_model(ModelKind::SL, 3, 4, r2);
        ModelGrad g(a);
        for (size_t i = 0; i < g.weights.size(); ++i) g.weights[i] = 0.01 * static_cast<double>(i);
        for (int s = 0; s < 50; ++s) {
            adam_step(a, g, 1e-3);
            adam_step(b, g, 1e-3);
        }
        CHECK(a == b);
    }
}

TEST_CASE("cross-entropy training locks onto a deterministic pattern") {
    Rng rng(12);
    LinearSoftmaxModel m = make_model(ModelKind::SL, kFeatureCount, 16, rng);
    FeatureArray f{};
    f.fill(1.0);
    const int label = 5;

    RoundDataset data;
    for (int i = 0; i < 32; ++i) data.push_back(record(f, label, 0.0, i == 31, 16));

    CHECK(cross_entropy_loss(m, data[0]) ==
          doctest::Approx(-std::log(policy_distribution(m, f)[label])).epsilon(1e-12));

    TrainConfig cfg;
    cfg.epochs_per_round = 2000;  // one full-batch adam step per epoch
    Rng train_rng(3);
    const TrainStats stats = train_sl(m, data, cfg, train_rng);
    CHECK(stats.adam_steps == 2000);
    const auto dist = policy_distribution(m, f);
    int argmax = 0;
    for (int a = 1; a < 16; ++a)
        if (dist[static_cast<size_t>(a)] > dist[static_cast<size_t>(argmax)]) argmax = a;
    CHECK(argmax == label);
    CHECK(dist[label] >= 0.95);
}

TEST_CASE("trainer gradients match finite differences") {
    Rng rng(77);
    TrainConfig cfg;

    for (int trial = 0; trial < 100; ++trial) {
        const RoundDataset batch = random_dataset(rng, 4);
        {
            LinearSoftmaxModel m = small_random_model(ModelKind::SL, rng);
            const ModelGrad g = sl_gradient(m, batch);
            const double err = oracle::gradient_relative_error(
                m,
                [&](const LinearSoftmaxModel& probe) {
                    double total = 0.0;
                    for (const auto& rec : batch) total += cross_entropy_loss(probe, rec);
                    return total / static_cast<double>(batch.size());
                },
                g);
            CHECK(err < 1e-5);
        }
        {
            LinearSoftmaxModel m = small_random_model(ModelKind::Q, rng);
            std::vector<double> targets;
            for (size_t i = 0; i < batch.size(); ++i) targets.push_back(rng.uniform(-1.0, 1.0));
            const ModelGrad g = q_gradient(m, batch, targets);
            const double err = oracle::gradient_relative_error(
                m,
                [&](const LinearSoftmaxModel& probe) {
                    double total = 0.0;
                    for (size_t i = 0; i < batch.size(); ++i)
                        total += q_loss(probe, batch[i], targets[i]);
                    return total / static_cast<double>(batch.size());
                },
                g);
            CHECK(err < 1e-5);
        }
        {
            LinearSoftmaxModel m = small_random_model(ModelKind::PG, rng);
            std::vector<double> returns;
            for (size_t i = 0; i < batch.size(); ++i) returns.push_back(rng.uniform(-2.0, 2.0));
            const ModelGrad g = pg_gradient(m, batch, returns);
            const double err = oracle::gradient_relative_error(
                m,
                [&](const LinearSoftmaxModel& probe) {
                    double total = 0.0;
                    for (size_t i = 0; i < batch.size(); ++i)
                        total += pg_loss(probe, batch[i], returns[i]);
                    return total / static_cast<double>(batch.size());
                },
                g);
            CHECK(err < 1e-5);
        }
    }
}

TEST_CASE("n-step returns truncate and bootstrap as specified") {
    FeatureArray f{};
    Rng rng(5);
    LinearSoftmaxModel m = make_model(ModelKind::Q, kFeatureCount, 4, rng);
    std::fill(m.weights.begin(), m.weights.end(), 0.0);
    std::fill(m.bias.begin(), m.bias.end(), 0.0);
    m.bias[2] = 0.5;  // max output

    RoundDataset data;
    data.push_back(record(f, 0, 0.1, false, 4));
    data.push_back(record(f, 1, -0.2, false, 4));
    data.push_back(record(f, 2, 0.0, false, 4));
    data.push_back(record(f, 3, 0.0, true, 4));

    SUBCASE("two rewards plus a discounted max-Q bootstrap") {
        CHECK(n_step_return(data, 0, 2, 0.9, m) == doctest::Approx(0.325).epsilon(1e-12));
    }

    SUBCASE("terminal truncation drops the bootstrap") {
        RoundDataset term;
        term.push_back(record(f, 0, 1.0, true, 4));
        CHECK(n_step_return(term, 0, 1, 0.9, m) == 1.0);
        CHECK(n_step_return(term, 0, 5, 0.9, m) == 1.0);
    }

    SUBCASE("zero discount reduces to the immediate reward") {
        CHECK(n_step_return(data, 0, 3, 0.0, m) == doctest::Approx(0.1).epsilon(1e-12));
    }

    SUBCASE("bootstrap is restricted to the recorded legal set") {
        RoundDataset restricted = data;
        restricted[2].legal = ActionSet{};
        restricted[2].legal.add(0);  // excludes the 0.5 output at id 2
        CHECK(n_step_return(restricted, 0, 2, 0.9, m) ==
              doctest::Approx(0.1 + 0.9 * -0.2).epsilon(1e-12));
    }

    SUBCASE("out-of-range t throws") {
        CHECK_THROWS_AS(n_step_return(data, 4, 1, 0.9, m), std::out_of_range);
        CHECK_THROWS_AS(n_step_return(data, -1, 1, 0.9, m), std::out_of_range);
    }
}

TEST_CASE("q training converges to a fixed target") {
    Rng rng(8);
    LinearSoftmaxModel m = make_model(ModelKind::Q, 3, 4, rng);
    FeatureArray f = features_of({1.0, 0.5, 0.25});
    RoundDataset data;
    data.push_back(record(f, 2, 1.0, true, 4));  // terminal: target is exactly 1

    CHECK(q_loss(m, data[0], [&] {
              std::vector<double> z(4);
              m.logits(f, z);
              return z[2];
          }()) == 0.0);

    TrainConfig cfg;
    cfg.epochs_per_round = 30000;
    Rng train_rng(4);
    train_q(m, data, cfg, train_rng);
    std::vector<double> z(4);
    m.logits(f, z);
    CHECK(z[2] == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("policy-gradient returns and updates") {
    SUBCASE("episode returns match the hand-computed value") {
        FeatureArray f{};
        RoundDataset data;
        data.push_back(record(f, 0, 1.0, false, 4));
        data.push_back(record(f, 1, 0.0, false, 4));
        data.push_back(record(f, 2, 1.0, true, 4));
        const auto r = episode_returns(data, 0.9);
        CHECK(r[0] == doctest::Approx(1.81).epsilon(1e-12));
        CHECK(r[1] == doctest::Approx(0.9).epsilon(1e-12));
        CHECK(r[2] == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("a positive-return step raises the taken action's probability") {
        Rng rng(6);
        LinearSoftmaxModel m = make_model(ModelKind::PG, 3, 4, rng);
        FeatureArray f = features_of({0.8, 0.1, 0.4});
        RoundDataset data;
        data.push_back(record(f, 1, 0.5, true, 4));
        const double before = policy_distribution(m, f)[1];
        TrainConfig cfg;
        cfg.epochs_per_round = 1;
        Rng train_rng(2);
        train_pg(m, data, cfg, train_rng);
        CHECK(policy_distribution(m, f)[1] > before);
    }
}

TEST_CASE("reward signal is the modeled player's normalized hp lead") {
    const Ruleset rules = make_ruleset(character_preset("balanced"));
    GameState s = initial_state(rules);

    s.p2.hp = 350;
    s.p1.hp = 300;
    CHECK(reward_signal(s, Player::P2) == doctest::Approx(0.125).epsilon(1e-12));

    s.p1.hp = s.p2.hp;
    CHECK(reward_signal(s, Player::P2) == 0.0);

    s.p2.hp = 0;
    s.p1.hp = 400;
    CHECK(reward_signal(s, Player::P2) == -1.0);
}

TEST_CASE("end_of_round dispatches by kind and clears the dataset") {
    const Ruleset rules = make_ruleset(character_preset("balanced"));
    TrainConfig cfg;
    Rng data_rng(3);
    RoundDataset data = random_dataset(data_rng, 40, kFeatureCount, 16);

    SUBCASE("none and random kinds are no-ops that still clear") {
        for (ModelKind kind : {ModelKind::None, ModelKind::Random}) {
            OpponentModel om = OpponentModel::make(kind, rules, 5);
            RoundDataset copy = data;
            const TrainStats stats = om.end_of_round(copy, cfg, data_rng);
            CHECK(copy.empty());
            CHECK(stats.adam_steps == 0);
            CHECK(stats.wall_ms >= 0.0);
        }
    }

    SUBCASE("sl dispatch equals a direct trainer call") {
        OpponentModel om = OpponentModel::make(ModelKind::SL, rules, 5);
        LinearSoftmaxModel direct = om.net();
        Rng r1(9), r2(9);
        train_sl(direct, data, cfg, r1);
        RoundDataset copy = data;
        om.end_of_round(copy, cfg, r2);
        CHECK(copy.empty());
        CHECK(om.net() == direct);
    }

    SUBCASE("parameters stay finite across many noisy rounds") {
        for (ModelKind kind : {ModelKind::SL, ModelKind::Q, ModelKind::PG}) {
            OpponentModel om = OpponentModel::make(kind, rules, 5);
            for (int round = 0; round < 25; ++round) {
                RoundDataset noisy = random_dataset(data_rng, 30, kFeatureCount, 16);
                om.end_of_round(noisy, cfg, data_rng);
                CHECK(noisy.empty());
            }
            for (double w : om.net().weights) CHECK(std::isfinite(w));
            for (double b : om.net().bias) CHECK(std::isfinite(b));
        }
    }

    SUBCASE("empty datasets are a no-op") {
        OpponentModel om = OpponentModel::make(ModelKind::SL, rules, 5);
        const LinearSoftmaxModel before = om.net();
        RoundDataset empty;
        om.end_of_round(empty, cfg, data_rng);
        CHECK(om.net() == before);
    }
}
