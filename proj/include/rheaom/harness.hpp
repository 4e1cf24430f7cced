#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rheaom/agents.hpp"
#include "rheaom/engine.hpp"
#include "rheaom/model_io.hpp"

namespace rheaom {

struct RoundLogEntry {
    int frame = 0;
    FighterState p1, p2;
    int a1 = 0, a2 = 0;

    bool operator==(const RoundLogEntry&) const = default;
};

struct RoundLog {
    std::vector<RoundLogEntry> entries;
    std::string to_jsonl() const;

    bool operator==(const RoundLog&) const = default;
};

struct DecisionTraceEntry {
    int frame = 0;
    Player player = Player::P1;
    int generations = 0;
    int forward_calls = 0;
    double best_fitness = 0.0;
    int chosen_action = 0;
};

std::string trace_to_jsonl(const std::vector<DecisionTraceEntry>& trace);

struct PlayerRoundStats {
    int decisions = 0;
    int64_t forward_calls = 0;
    int max_forward_calls = 0;
    double mean_generations = 0.0;
    double train_ms = 0.0;

    double mean_forward_calls() const {
        return decisions > 0 ? static_cast<double>(forward_calls) / decisions : 0.0;
    }
};

struct RoundResult {
    RoundStatus winner = RoundStatus::Draw;
    int hp_diff = 0;  // p1.hp - p2.hp at the end
    int frames = 0;
    PlayerRoundStats stats[2];
    int budget_violations = 0;

    double p1_win_value() const {
        if (winner == RoundStatus::P1Win) return 1.0;
        if (winner == RoundStatus::P2Win) return 0.0;
        return 0.5;  // draws split the point
    }
};

// One full round. Seeds every per-round stream from `seed`, records each
// learning agent's opponent transitions, and enforces the decision budget
// (an over-budget decision is replaced by the neutral action and counted).
// Training does NOT happen here; callers run the between-round hook.
RoundResult run_round(const Ruleset& rules, Agent& p1, Agent& p2, uint64_t seed, int delay,
                      const TrainConfig& train_cfg, RoundLog* log = nullptr,
                      std::vector<DecisionTraceEntry>* trace = nullptr);

struct ExperimentConfig {
    AgentSpec agents[2];
    std::string character = "balanced";
    int rounds = 200;
    int repeats = 5;
    uint64_t seed = 1;
    std::string out_dir;
    int delay = 15;
    EvolutionConfig evolution;
    MctsConfig mcts;
    TrainConfig train;

    void validate() const;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig load_config_file(const std::string& path);

// Applies one `key=value` override onto a JSON config document; the dotted
// path must reference an existing key. Throws std::invalid_argument naming
// the offending key otherwise.
void apply_override(std::string& config_json, const std::string& assignment);

struct SeriesResult {
    int rounds = 0;
    int repeats = 0;
    std::vector<std::vector<RoundResult>> by_repeat;
    double p1_win_rate = 0.0;
    double ci95 = 0.0;
    int p1_wins = 0, p2_wins = 0, draws = 0;
    double mean_hp_diff = 0.0;
    double mean_frames = 0.0;
    int budget_violations = 0;
    double max_train_ms = 0.0;
    double elapsed_s = 0.0;
};

// rounds x repeats with per-repeat fresh agents and models, derived seeds,
// and between-round training. Writes results.csv / series.json / curves.csv
// and model snapshots under cfg.out_dir when it is set. `threads` caps the
// parallel repeat workers (0 = hardware, bounded by RHEAOM_THREADS).
SeriesResult run_series(const ExperimentConfig& cfg, int threads = 0);

struct CurveTable {
    std::vector<double> win_rate;  // trailing-window mean of p1 win value
    std::vector<double> hp_diff;   // trailing-window mean of p1 hp lead
};

// Trailing-window means per round index, averaged over repeats. Throws when
// window < 1 or window > rounds.
CurveTable convergence_curves(const SeriesResult& series, int window);

std::string results_csv(const SeriesResult& series);
std::string series_json(const ExperimentConfig& cfg, const SeriesResult& series);
std::string curves_csv(const CurveTable& curves);

// Recomputes the headline aggregate from a results.csv payload; used to
// cross-check the serialized artifacts.
double win_rate_from_results_csv(const std::string& csv_text);

int worker_count(int requested, int cells);

}  // namespace rheaom
