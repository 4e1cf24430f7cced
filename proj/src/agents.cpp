#include "rheaom/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rheaom/model_io.hpp"

namespace rheaom {

const char* agent_kind_name(AgentKind kind) {
    switch (kind) {
        case AgentKind::Random: return "random";
        case AgentKind::Scripted: return "scripted";
        case AgentKind::Mcts: return "mcts";
        case AgentKind::Rhea: return "rhea";
    }
    return "random";
}

AgentKind agent_kind_from_name(const std::string& name) {
    if (name == "random") return AgentKind::Random;
    if (name == "scripted") return AgentKind::Scripted;
    if (name == "mcts") return AgentKind::Mcts;
    if (name == "rhea") return AgentKind::Rhea;
    throw std::invalid_argument("unknown agent kind: " + name);
}

void MctsConfig::validate() const {
    if (uct_c <= 0) throw std::invalid_argument("mcts.uct_c must be positive");
    if (max_depth < 1) throw std::invalid_argument("mcts.max_depth must be >= 1");
    budget.validate();
}

// ---------------------------------------------------------------------------
// Agent base

void Agent::begin_round(uint64_t /*seed*/) {
    intended_.clear();
    current_frame_ = -1;
}

void Agent::on_frame(const Observation& /*obs*/) { ++current_frame_; }

void Agent::note_committed(int frame, int action) {
    if (frame < 0) return;
    const int carried = intended_.empty() ? action : intended_.back();
    while (static_cast<int>(intended_.size()) <= frame) intended_.push_back(carried);
    intended_[static_cast<size_t>(frame)] = action;
}

GameState Agent::compensate_delay(const Ruleset& rules, const Observation& obs,
                                  OpponentModel& om) {
    GameState s = obs.snapshot;
    const int target = current_frame_;
    while (s.frame < target) {
        if (round_status(s) != RoundStatus::Ongoing) return obs.snapshot;
        int mine = rules.character.neutral_action;
        if (!intended_.empty()) {
            const size_t f = std::min(static_cast<size_t>(s.frame), intended_.size() - 1);
            mine = intended_[f];
        }
        int theirs = rules.character.neutral_action;
        if (s.fighter(other(player_)).idle()) {
            const FeatureArray features = extract_features(rules, s, other(player_));
            theirs = om.predict(features, legal_actions(rules, s, other(player_)));
        }
        const int a1 = player_ == Player::P1 ? mine : theirs;
        const int a2 = player_ == Player::P1 ? theirs : mine;
        s = step(rules, s, a1, a2);
    }
    if (round_status(s) != RoundStatus::Ongoing) return obs.snapshot;
    return s;
}

// ---------------------------------------------------------------------------
// Random

void RandomAgent::begin_round(uint64_t seed) {
    Agent::begin_round(seed);
    rng_.reseed(seed);
}

int RandomAgent::decide(const Ruleset& rules, const Observation& obs) {
    const ActionSet legal = legal_actions(rules, obs.snapshot, player_);
    return legal.ids[rng_.uniform_int(static_cast<uint32_t>(legal.count))];
}

// ---------------------------------------------------------------------------
// Scripted

namespace {

int find_guard_action(const Ruleset& rules) {
    for (const auto& a : rules.character.actions)
        if (a.guard) return a.id;
    return rules.character.neutral_action;
}

int find_approach_action(const Ruleset& rules) {
    int best = rules.character.neutral_action;
    int best_dx = 0;
    for (const auto& a : rules.character.actions)
        if (a.domain == Domain::Ground && !a.is_attack() && a.move_dx > best_dx) {
            best = a.id;
            best_dx = a.move_dx;
        }
    return best;
}

int strongest_attack(const Ruleset& rules, Domain domain, int energy) {
    int best = kNoAction;
    for (const auto& a : rules.character.actions) {
        if (a.domain != domain || !a.is_attack() || a.energy_cost > energy) continue;
        if (best == kNoAction || a.damage > rules.character.action(best).damage) best = a.id;
    }
    return best;
}

int costliest_attack(const Ruleset& rules) {
    int best = kNoAction;
    for (const auto& a : rules.character.actions) {
        if (!a.is_attack() || a.energy_cost == 0) continue;
        if (best == kNoAction || a.energy_cost > rules.character.action(best).energy_cost)
            best = a.id;
    }
    return best;
}

}  // namespace

int scripted_policy(const Ruleset& rules, const Observation& obs, Player self,
                    const ScriptParams& params, int frames_since_down) {
    const GameState& s = obs.snapshot;
    const FighterState& me = s.fighter(self);
    const FighterState& opp = s.fighter(other(self));

    if (me.stage == Stage::Down) return rules.character.recover_action;
    if (me.stage == Stage::Air) {
        const int air = strongest_attack(rules, Domain::Air, me.energy);
        return air != kNoAction ? air : rules.character.neutral_action;
    }
    if (frames_since_down < params.guard_frames) return find_guard_action(rules);

    const int gap = std::abs(me.x - opp.x);
    if (gap > params.attack_range) return find_approach_action(rules);

    const int special = costliest_attack(rules);
    if (special != kNoAction && me.energy >= rules.character.action(special).energy_cost)
        return special;
    const int attack = strongest_attack(rules, Domain::Ground, me.energy);
    return attack != kNoAction ? attack : rules.character.neutral_action;
}

void ScriptedAgent::begin_round(uint64_t seed) {
    Agent::begin_round(seed);
    frames_since_down_ = 1 << 20;
    last_stage_ = Stage::Stand;
}

void ScriptedAgent::on_frame(const Observation& obs) {
    Agent::on_frame(obs);
    const Stage stage = obs.snapshot.fighter(player_).stage;
    if (stage == Stage::Down)
        frames_since_down_ = 0;
    else if (frames_since_down_ < (1 << 20))
        ++frames_since_down_;
    last_stage_ = stage;
}

int ScriptedAgent::decide(const Ruleset& rules, const Observation& obs) {
    return scripted_policy(rules, obs, player_, params_, frames_since_down_);
}

// ---------------------------------------------------------------------------
// Rolling-horizon agent

void RheaAgent::begin_round(uint64_t seed) {
    Agent::begin_round(seed);
    planner_.reseed(Rng::derive(seed, 0));
    planner_.begin_round();
    om_.reseed(Rng::derive(seed, 1));
    dataset_.clear();
}

int RheaAgent::decide(const Ruleset& rules, const Observation& obs) {
    const GameState now = compensate_delay(rules, obs, om_);
    const int action = planner_.plan(rules, now, player_, om_);
    stats_ = planner_.last_stats();
    return action;
}

// ---------------------------------------------------------------------------
// MCTS

namespace {

struct MctsNode {
    int visits = 0;
    double value_sum = 0.0;
    std::array<int, kMaxActions> child;
    MctsNode() { child.fill(-1); }
    double mean() const { return visits > 0 ? value_sum / visits : 0.0; }
};

}  // namespace

int mcts_plan(const Ruleset& rules, const GameState& state, Player self, OpponentModel& om,
              const MctsConfig& cfg, Rng& rng, MctsStats* stats) {
    const ActionSet root_legal = legal_actions(rules, state, self);
    BudgetTracker tracker(cfg.budget);

    auto opponent_action = [&](const GameState& s) {
        if (!s.fighter(other(self)).idle()) return rules.character.neutral_action;
        const FeatureArray features = extract_features(rules, s, other(self));
        return om.predict(features, legal_actions(rules, s, other(self)));
    };
    auto advance = [&](const GameState& s, int a_self) {
        const int a_opp = opponent_action(s);
        tracker.charge();
        const int a1 = self == Player::P1 ? a_self : a_opp;
        const int a2 = self == Player::P1 ? a_opp : a_self;
        return advance_gene(rules, s, a1, a2);
    };

    std::vector<MctsNode> tree(1);
    int iterations = 0;

    while (tracker.can_spend(1)) {
        GameState s = state;
        std::vector<int> path{0};
        int node = 0;
        int depth = 0;
        double value = 0.0;

        while (true) {
            if (round_status(s) != RoundStatus::Ongoing || depth >= cfg.max_depth ||
                !tracker.can_spend(1)) {
                value = score_fitness(s, self);
                break;
            }
            const ActionSet legal = legal_actions(rules, s, self);
            int chosen = kNoAction;
            for (int id : legal.view())
                if (tree[static_cast<size_t>(node)].child[static_cast<size_t>(id)] < 0) {
                    chosen = id;
                    break;
                }
            const bool expanding = chosen != kNoAction;
            if (!expanding) {
                const MctsNode& parent = tree[static_cast<size_t>(node)];
                const double log_parent = std::log(static_cast<double>(std::max(1, parent.visits)));
                double best_uct = -1e300;
                for (int id : legal.view()) {
                    const MctsNode& c =
                        tree[static_cast<size_t>(parent.child[static_cast<size_t>(id)])];
                    const double uct =
                        c.mean() + cfg.uct_c * std::sqrt(log_parent / std::max(1, c.visits));
                    if (uct > best_uct) {
                        best_uct = uct;
                        chosen = id;
                    }
                }
            }

            s = advance(s, chosen);
            ++depth;

            if (expanding) {
                tree[static_cast<size_t>(node)].child[static_cast<size_t>(chosen)] =
                    static_cast<int>(tree.size());
                tree.emplace_back();
                path.push_back(static_cast<int>(tree.size()) - 1);
                // Random-legal rollout to the depth cap.
                while (depth < cfg.max_depth && round_status(s) == RoundStatus::Ongoing &&
                       tracker.can_spend(1)) {
                    const ActionSet legal_now = legal_actions(rules, s, self);
                    const int a =
                        legal_now.ids[rng.uniform_int(static_cast<uint32_t>(legal_now.count))];
                    s = advance(s, a);
                    ++depth;
                }
                value = score_fitness(s, self);
                break;
            }
            node = tree[static_cast<size_t>(node)].child[static_cast<size_t>(chosen)];
            path.push_back(node);
        }

        for (int idx : path) {
            tree[static_cast<size_t>(idx)].visits += 1;
            tree[static_cast<size_t>(idx)].value_sum += value;
        }
        ++iterations;
    }

    // Most-visited root child; unexplored budgets fall back to a random pick.
    int best = kNoAction;
    int best_visits = -1;
    for (int id : root_legal.view()) {
        const int child = tree[0].child[static_cast<size_t>(id)];
        if (child < 0) continue;
        const int visits = tree[static_cast<size_t>(child)].visits;
        if (visits > best_visits) {
            best_visits = visits;
            best = id;
        }
    }
    if (best == kNoAction)
        best = root_legal.ids[rng.uniform_int(static_cast<uint32_t>(root_legal.count))];

    if (stats) {
        stats->iterations = iterations;
        stats->forward_calls = tracker.used();
        stats->chosen_action = best;
        stats->root_visits.assign(static_cast<size_t>(rules.action_count()), 0);
        stats->root_means.assign(static_cast<size_t>(rules.action_count()), 0.0);
        for (int id = 0; id < rules.action_count(); ++id) {
            const int child = tree[0].child[static_cast<size_t>(id)];
            if (child < 0) continue;
            stats->root_visits[static_cast<size_t>(id)] = tree[static_cast<size_t>(child)].visits;
            stats->root_means[static_cast<size_t>(id)] = tree[static_cast<size_t>(child)].mean();
        }
    }
    return best;
}

void MctsAgent::begin_round(uint64_t seed) {
    Agent::begin_round(seed);
    rng_.reseed(Rng::derive(seed, 0));
    om_.reseed(Rng::derive(seed, 1));
    dataset_.clear();
}

int MctsAgent::decide(const Ruleset& rules, const Observation& obs) {
    const GameState now = compensate_delay(rules, obs, om_);
    MctsStats mcts_stats;
    const int action = mcts_plan(rules, now, player_, om_, cfg_, rng_, &mcts_stats);
    stats_.generations = mcts_stats.iterations;
    stats_.forward_calls = mcts_stats.forward_calls;
    stats_.chosen_action = action;
    stats_.best_fitness = 0.0;
    stats_.generation_best.clear();
    return action;
}

// ---------------------------------------------------------------------------
// Specs

std::string AgentSpec::label() const {
    switch (kind) {
        case AgentKind::Random: return "random";
        case AgentKind::Scripted: return "scripted";
        case AgentKind::Mcts:
            return om == ModelKind::None ? "mcts" : std::string("mcts-") + model_kind_name(om);
        case AgentKind::Rhea:
            return om == ModelKind::None ? "rhea" : std::string("rheaom-") + model_kind_name(om);
    }
    return "agent";
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const Ruleset& rules,
                                  const EvolutionConfig& evolution, const MctsConfig& mcts,
                                  uint64_t model_seed) {
    switch (spec.kind) {
        case AgentKind::Random: return std::make_unique<RandomAgent>();
        case AgentKind::Scripted: return std::make_unique<ScriptedAgent>(spec.script);
        case AgentKind::Mcts:
        case AgentKind::Rhea: {
            OpponentModel om = spec.model_path.empty()
                                   ? OpponentModel::make(spec.om, rules, model_seed)
                                   : OpponentModel(load_model(spec.model_path),
                                                   rules.character.neutral_action, model_seed);
            if (!spec.model_path.empty() && spec.om != ModelKind::None && om.kind() != spec.om)
                throw std::invalid_argument("agent model snapshot kind does not match spec");
            if (spec.kind == AgentKind::Mcts)
                return std::make_unique<MctsAgent>(mcts, std::move(om));
            return std::make_unique<RheaAgent>(evolution, std::move(om));
        }
    }
    throw std::invalid_argument("unknown agent kind");
}

}  // namespace rheaom
