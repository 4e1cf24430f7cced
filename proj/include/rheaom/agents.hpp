#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rheaom/engine.hpp"
#include "rheaom/opponent_model.hpp"
#include "rheaom/planner.hpp"

namespace rheaom {

enum class AgentKind { Random, Scripted, Mcts, Rhea };

const char* agent_kind_name(AgentKind kind);
AgentKind agent_kind_from_name(const std::string& name);

struct ScriptParams {
    int attack_range = 34;  // switch from walking to attacking inside this gap
    int guard_frames = 24;  // keep guarding this long after getting up
};

struct MctsConfig {
    double uct_c = 1.414;
    int max_depth = 4;
    DecisionBudget budget;
    enum class RolloutPolicy { RandomLegal };
    RolloutPolicy rollout_policy = RolloutPolicy::RandomLegal;

    void validate() const;
};

struct MctsStats {
    int iterations = 0;
    int forward_calls = 0;
    int chosen_action = 0;
    std::vector<int> root_visits;
    std::vector<double> root_means;
};

// Open-loop UCT over own action sequences; the opponent side of every
// advance comes from the model. Uses the same budget accounting as the
// rolling-horizon planner. With no budget at all, falls back to a seeded
// uniform legal action.
int mcts_plan(const Ruleset& rules, const GameState& state, Player self, OpponentModel& om,
              const MctsConfig& cfg, Rng& rng, MctsStats* stats = nullptr);

// Deterministic finite-state fighter: walk in, attack in range, spend energy
// on the special, guard briefly after standing back up.
int scripted_policy(const Ruleset& rules, const Observation& obs, Player self,
                    const ScriptParams& params, int frames_since_down);

// One side of a match. Agents decide from a delayed observation only; the
// planner-backed ones rebuild an estimate of the present with the forward
// model before searching.
class Agent {
public:
    virtual ~Agent() = default;

    virtual AgentKind kind() const = 0;
    virtual int decide(const Ruleset& rules, const Observation& obs) = 0;

    // Round lifecycle. `seed` re-derives every per-round stream.
    virtual void begin_round(uint64_t seed);
    virtual void on_frame(const Observation& obs);  // called every frame, pre-decision
    void note_committed(int frame, int action);

    virtual OpponentModel* opponent_model() { return nullptr; }
    virtual const DecisionStats* last_decision() const { return nullptr; }
    virtual RoundDataset* dataset() { return nullptr; }
    virtual const DecisionBudget* decision_budget() const { return nullptr; }

    // Between-round training hook; learning agents train on the round's
    // dataset and clear it.
    virtual TrainStats finish_round(const TrainConfig& /*cfg*/, Rng& /*rng*/) { return {}; }

    Player player() const { return player_; }
    void set_player(Player p) { player_ = p; }

protected:
    // Replays own committed actions over the delayed snapshot, filling the
    // opponent side from the model; falls back to the raw snapshot when the
    // replay ends the round on its own.
    GameState compensate_delay(const Ruleset& rules, const Observation& obs, OpponentModel& om);

    Player player_ = Player::P1;
    std::vector<int> intended_;  // most recent committed action, per frame
    int current_frame_ = -1;     // advanced by on_frame
};

class RandomAgent : public Agent {
public:
    AgentKind kind() const override { return AgentKind::Random; }
    void begin_round(uint64_t seed) override;
    int decide(const Ruleset& rules, const Observation& obs) override;

private:
    Rng rng_;
};

class ScriptedAgent : public Agent {
public:
    explicit ScriptedAgent(const ScriptParams& params = {}) : params_(params) {}
    AgentKind kind() const override { return AgentKind::Scripted; }
    void begin_round(uint64_t seed) override;
    void on_frame(const Observation& obs) override;
    int decide(const Ruleset& rules, const Observation& obs) override;

private:
    ScriptParams params_;
    int frames_since_down_ = 1 << 20;
    Stage last_stage_ = Stage::Stand;
};

class RheaAgent : public Agent {
public:
    RheaAgent(const EvolutionConfig& cfg, OpponentModel om)
        : planner_(cfg), om_(std::move(om)) {}
    AgentKind kind() const override { return AgentKind::Rhea; }
    void begin_round(uint64_t seed) override;
    int decide(const Ruleset& rules, const Observation& obs) override;
    OpponentModel* opponent_model() override { return &om_; }
    const DecisionStats* last_decision() const override { return &stats_; }
    RoundDataset* dataset() override { return &dataset_; }
    const DecisionBudget* decision_budget() const override { return &planner_.config().budget; }
    TrainStats finish_round(const TrainConfig& cfg, Rng& rng) override {
        return om_.end_of_round(dataset_, cfg, rng);
    }

private:
    RheaPlanner planner_;
    OpponentModel om_;
    RoundDataset dataset_;
    DecisionStats stats_;
};

class MctsAgent : public Agent {
public:
    MctsAgent(const MctsConfig& cfg, OpponentModel om) : cfg_(cfg), om_(std::move(om)) {}
    AgentKind kind() const override { return AgentKind::Mcts; }
    void begin_round(uint64_t seed) override;
    int decide(const Ruleset& rules, const Observation& obs) override;
    OpponentModel* opponent_model() override { return &om_; }
    const DecisionStats* last_decision() const override { return &stats_; }
    RoundDataset* dataset() override { return &dataset_; }
    const DecisionBudget* decision_budget() const override { return &cfg_.budget; }
    TrainStats finish_round(const TrainConfig& cfg, Rng& rng) override {
        return om_.end_of_round(dataset_, cfg, rng);
    }

private:
    MctsConfig cfg_;
    OpponentModel om_;
    RoundDataset dataset_;
    Rng rng_;
    DecisionStats stats_;
};

// What the experiment config names: an agent kind, its opponent-model kind,
// and an optional snapshot to warm-start from.
struct AgentSpec {
    AgentKind kind = AgentKind::Rhea;
    ModelKind om = ModelKind::None;
    std::string model_path;  // empty = fresh model
    ScriptParams script;
    std::string label() const;
};

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const Ruleset& rules,
                                  const EvolutionConfig& evolution, const MctsConfig& mcts,
                                  uint64_t model_seed);

}  // namespace rheaom
