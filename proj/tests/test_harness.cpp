#include <doctest.h>

#include <filesystem>

#include "rheaom/harness.hpp"

using namespace rheaom;

namespace {

Ruleset balanced() { return make_ruleset(character_preset("balanced")); }

// Test double: always issues the neutral no-op.
class NoopAgent : public Agent {
public:
    AgentKind kind() const override { return AgentKind::Scripted; }
    int decide(const Ruleset& rules, const Observation&) override {
        return rules.character.neutral_action;
    }
};

ExperimentConfig quick_config(const char* om1, const char* om2, int rounds, int repeats,
                              uint64_t seed) {
    ExperimentConfig cfg;
    cfg.agents[0].kind = AgentKind::Rhea;
    cfg.agents[0].om = model_kind_from_name(om1);
    cfg.agents[1].kind = AgentKind::Rhea;
    cfg.agents[1].om = model_kind_from_name(om2);
    cfg.rounds = rounds;
    cfg.repeats = repeats;
    cfg.seed = seed;
    cfg.evolution.budget.limit = 56;  // keep unit runs quick
    return cfg;
}

}  // namespace

TEST_CASE("two no-op agents draw at the frame cap") {
    const Ruleset rules = balanced();
    NoopAgent a, b;
    TrainConfig train;
    const RoundResult r = run_round(rules, a, b, 1, 15, train);
    CHECK(r.winner == RoundStatus::Draw);
    CHECK(r.frames == initial_state(rules).round_limit);
    CHECK(r.hp_diff == 0);
    CHECK(r.stats[0].forward_calls == 0);
}

TEST_CASE("scripted beats random over a seeded set of rounds") {
    const Ruleset rules = balanced();
    TrainConfig train;
    int scripted_wins = 0, random_wins = 0;
    for (int round = 0; round < 100; ++round) {
        ScriptedAgent scripted;
        RandomAgent random_agent;
        const RoundResult r =
            run_round(rules, scripted, random_agent, Rng::derive(404, round), 15, train);
        scripted_wins += r.winner == RoundStatus::P1Win;
        random_wins += r.winner == RoundStatus::P2Win;
    }
    CHECK(scripted_wins > 50);
    CHECK(scripted_wins > random_wins);
}

TEST_CASE("identical seeds reproduce the round log byte for byte") {
    const Ruleset rules = balanced();
    TrainConfig train;
    EvolutionConfig evo;
    evo.budget.limit = 56;

    auto run_once = [&](uint64_t seed) {
        RheaAgent p1(evo, OpponentModel::make(ModelKind::SL, rules, 3));
        ScriptedAgent p2;
        RoundLog log;
        run_round(rules, p1, p2, seed, 15, train, &log);
        return log;
    };
    const RoundLog first = run_once(99);
    const RoundLog second = run_once(99);
    CHECK(first == second);
    CHECK(first.to_jsonl() == second.to_jsonl());
    CHECK(first.to_jsonl() != run_once(100).to_jsonl());
}

TEST_CASE("transitions are recorded at opponent commits with rewards attached") {
    const Ruleset rules = balanced();
    TrainConfig train;
    EvolutionConfig evo;
    evo.budget.limit = 28;

    RheaAgent learner(evo, OpponentModel::make(ModelKind::SL, rules, 3));
    ScriptedAgent dummy;
    run_round(rules, learner, dummy, 7, 15, train);

    const RoundDataset& data = *learner.dataset();
    REQUIRE_FALSE(data.empty());
    CHECK(data.back().terminal);
    for (size_t i = 0; i + 1 < data.size(); ++i) CHECK_FALSE(data[i].terminal);
    for (const auto& rec : data) {
        CHECK(rec.action >= 0);
        CHECK(rec.action < rules.action_count());
        CHECK(rec.reward >= -1.0);
        CHECK(rec.reward <= 1.0);
        CHECK(rec.legal.count > 0);
        for (double v : rec.features) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    SUBCASE("the dataset clears at the next round start") {
        learner.begin_round(123);
        CHECK(learner.dataset()->empty());
    }
}

TEST_CASE("series runs rounds x repeats and aggregates the confidence interval") {
    ExperimentConfig cfg = quick_config("none", "none", 3, 2, 5);
    const SeriesResult series = run_series(cfg, 1);
    CHECK(series.by_repeat.size() == 2);
    CHECK(series.by_repeat[0].size() == 3);
    CHECK(series.p1_wins + series.p2_wins + series.draws == 6);
    const double expected_ci =
        1.96 * std::sqrt(series.p1_win_rate * (1 - series.p1_win_rate) / 6.0);
    CHECK(series.ci95 == doctest::Approx(expected_ci).epsilon(1e-12));
}

TEST_CASE("the normal-approximation interval matches the hand value") {
    SeriesResult series;
    series.rounds = 200;
    series.repeats = 2;
    series.by_repeat.resize(2);
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < 200; ++i) {
            RoundResult r;
            r.winner = (i + rep) % 2 == 0 ? RoundStatus::P1Win : RoundStatus::P2Win;
            series.by_repeat[rep].push_back(r);
        }
    // Recompute through the csv helper: p = 0.5, N = 400 -> ci ~ 0.049.
    CHECK(win_rate_from_results_csv(results_csv(series)) == doctest::Approx(0.5));
    const double ci = 1.96 * std::sqrt(0.5 * 0.5 / 400.0);
    CHECK(ci == doctest::Approx(0.049).epsilon(1e-2));
}

TEST_CASE("identical configs give identical series") {
    ExperimentConfig cfg = quick_config("sl", "none", 3, 1, 21);
    const SeriesResult a = run_series(cfg, 1);
    const SeriesResult b = run_series(cfg, 1);
    CHECK(results_csv(a) == results_csv(b));
}

TEST_CASE("earlier rounds do not depend on how many follow") {
    ExperimentConfig longer = quick_config("pg", "none", 5, 1, 33);
    ExperimentConfig shorter = longer;
    shorter.rounds = 3;
    const std::string long_csv = results_csv(run_series(longer, 1));
    const std::string short_csv = results_csv(run_series(shorter, 1));
    // The shorter run's rows are a prefix of the longer run's rows.
    CHECK(long_csv.substr(0, short_csv.size()) == short_csv);
}

TEST_CASE("aggregate win rate is recomputable from the csv artifact") {
    ExperimentConfig cfg = quick_config("q", "none", 4, 2, 8);
    const SeriesResult series = run_series(cfg, 2);
    CHECK(win_rate_from_results_csv(results_csv(series)) ==
          doctest::Approx(series.p1_win_rate).epsilon(1e-12));
}

TEST_CASE("budget accounting totals match the per-decision sums") {
    ExperimentConfig cfg = quick_config("none", "none", 2, 1, 3);
    const SeriesResult series = run_series(cfg, 1);
    CHECK(series.budget_violations == 0);
    for (const auto& repeat : series.by_repeat)
        for (const auto& r : repeat)
            for (int i = 0; i < 2; ++i) {
                CHECK(r.stats[i].max_forward_calls <= cfg.evolution.budget.limit);
                CHECK(r.stats[i].forward_calls <=
                      static_cast<int64_t>(r.stats[i].decisions) * cfg.evolution.budget.limit);
            }
}

TEST_CASE("convergence curves smooth with a trailing window") {
    SeriesResult series;
    series.rounds = 6;
    series.repeats = 1;
    series.by_repeat.resize(1);
    const int hp[] = {10, 20, 30, 40, 50, 60};
    for (int i = 0; i < 6; ++i) {
        RoundResult r;
        r.winner = RoundStatus::P1Win;
        r.hp_diff = hp[i];
        series.by_repeat[0].push_back(r);
    }

    SUBCASE("constant wins give a flat curve at 1") {
        const CurveTable t = convergence_curves(series, 3);
        for (double v : t.win_rate) CHECK(v == doctest::Approx(1.0));
        CHECK(t.hp_diff[5] == doctest::Approx((40 + 50 + 60) / 3.0));
        CHECK(t.hp_diff[0] == doctest::Approx(10.0));  // truncated early window
    }

    SUBCASE("window one returns the raw series") {
        const CurveTable t = convergence_curves(series, 1);
        for (int i = 0; i < 6; ++i) CHECK(t.hp_diff[static_cast<size_t>(i)] == doctest::Approx(hp[i]));
    }

    SUBCASE("oversized windows are rejected") {
        CHECK_THROWS_AS(convergence_curves(series, 7), std::invalid_argument);
        CHECK_THROWS_AS(convergence_curves(series, 0), std::invalid_argument);
    }
}

TEST_CASE("series artifacts land in the output directory") {
    namespace fs = std::filesystem;
    const std::string out = (fs::temp_directory_path() / "rheaom_series_test").string();
    fs::remove_all(out);
    ExperimentConfig cfg = quick_config("sl", "none", 2, 1, 9);
    cfg.out_dir = out;
    run_series(cfg, 1);
    CHECK(fs::exists(out + "/results.csv"));
    CHECK(fs::exists(out + "/series.json"));
    CHECK(fs::exists(out + "/curves.csv"));
    bool has_model = false;
    for (const auto& entry : fs::directory_iterator(out + "/models")) has_model |= entry.is_regular_file();
    CHECK(has_model);
    fs::remove_all(out);
}

TEST_CASE("config json round-trips and rejects bad keys") {
    ExperimentConfig cfg = quick_config("pg", "random", 7, 3, 11);
    cfg.evolution.lambda = 0.25;
    const std::string text = config_to_json(cfg);
    const ExperimentConfig back = config_from_json(text);
    CHECK(back.rounds == 7);
    CHECK(back.repeats == 3);
    CHECK(back.agents[0].om == ModelKind::PG);
    CHECK(back.evolution.lambda == doctest::Approx(0.25));

    SUBCASE("overrides rewrite existing keys only") {
        std::string doc = text;
        apply_override(doc, "evolution.lambda=0.75");
        CHECK(config_from_json(doc).evolution.lambda == doctest::Approx(0.75));
        apply_override(doc, "agents.0.om=q");
        CHECK(config_from_json(doc).agents[0].om == ModelKind::Q);
        CHECK_THROWS_AS(apply_override(doc, "evolution.lambdaa=0.5"), std::invalid_argument);
        CHECK_THROWS_AS(apply_override(doc, "nonsense"), std::invalid_argument);
    }

    SUBCASE("invalid values fail validation with the key named") {
        std::string doc = text;
        apply_override(doc, "rounds=0");
        try {
            config_from_json(doc);
            FAIL("expected invalid_argument");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("rounds") != std::string::npos);
        }
    }
}
