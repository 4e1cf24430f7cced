#include "rheaom/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace rheaom {

namespace {

int clamp_int(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

bool in_active_window(const ActionSpec& a, int action_frame) {
    return action_frame >= a.startup && action_frame < a.startup + a.active;
}

bool guarding(const Ruleset& rules, const FighterState& f) {
    if (f.current_action == kNoAction) return false;
    const ActionSpec& a = rules.character.action(f.current_action);
    return a.guard && in_active_window(a, f.action_frame);
}

// Forward hit box anchored at the attacker's origin.
bool in_reach(const ActionSpec& attack, const FighterState& att, const FighterState& def) {
    const int dx = att.facing == Facing::Right ? def.x - att.x : att.x - def.x;
    if (dx < 0 || dx > attack.reach_x) return false;
    const int dy = def.y >= att.y ? def.y - att.y : att.y - def.y;
    return dy <= attack.reach_y;
}

void start_action(const Ruleset& rules, FighterState& f, int action, int opponent_x) {
    if (opponent_x > f.x)
        f.facing = Facing::Right;
    else if (opponent_x < f.x)
        f.facing = Facing::Left;
    f.current_action = action;
    f.action_frame = 0;
    f.energy -= rules.character.action(action).energy_cost;
}

Stage recompute_stage(const Ruleset& rules, const FighterState& f) {
    if (f.down_frames > 0 || f.getting_up) return Stage::Down;
    if (f.y > 0) return Stage::Air;
    if (f.current_action != kNoAction && rules.character.action(f.current_action).crouch)
        return Stage::Crouch;
    return Stage::Stand;
}

}  // namespace

Ruleset make_ruleset(const CharacterData& character, const EngineConfig& config) {
    Ruleset r{character, config};
    r.character.resolve_special_actions();
    r.character.validate();
    if (r.character.action_count() > kMaxActions)
        throw std::invalid_argument("action set larger than kMaxActions");
    return r;
}

GameState initial_state(const Ruleset& rules) {
    GameState s;
    s.frame = 0;
    s.max_hp = rules.character.max_hp;
    s.round_limit = 3600;
    const int off = rules.character.arena_width * 3 / 10;
    for (Player p : {Player::P1, Player::P2}) {
        FighterState& f = s.fighter(p);
        f.hp = rules.character.max_hp;
        f.energy = 0;
        f.y = 0;
        f.stage = Stage::Stand;
        f.current_action = kNoAction;
    }
    s.p1.x = off;
    s.p1.facing = Facing::Right;
    s.p2.x = rules.character.arena_width - off;
    s.p2.facing = Facing::Left;
    return s;
}

bool action_legal(const Ruleset& rules, const FighterState& f, int action) {
    if (action < 0 || action >= rules.action_count()) return false;
    if (f.stage == Stage::Down) return action == rules.character.recover_action;
    const ActionSpec& a = rules.character.action(action);
    const Domain required = f.stage == Stage::Air ? Domain::Air : Domain::Ground;
    return a.domain == required && a.energy_cost <= f.energy;
}

ActionSet legal_actions(const Ruleset& rules, const GameState& state, Player player) {
    const FighterState& f = state.fighter(player);
    ActionSet set;
    if (f.stage == Stage::Down) {
        set.add(rules.character.recover_action);
        return set;
    }
    for (int id = 0; id < rules.action_count(); ++id)
        if (action_legal(rules, f, id)) set.add(id);
    return set;
}

RoundStatus round_status(const GameState& state) {
    const bool p1_dead = state.p1.hp <= 0;
    const bool p2_dead = state.p2.hp <= 0;
    if (p1_dead && p2_dead) return RoundStatus::Draw;
    if (p2_dead) return RoundStatus::P1Win;
    if (p1_dead) return RoundStatus::P2Win;
    if (state.frame >= state.round_limit) {
        if (state.p1.hp > state.p2.hp) return RoundStatus::P1Win;
        if (state.p2.hp > state.p1.hp) return RoundStatus::P2Win;
        return RoundStatus::Draw;
    }
    return RoundStatus::Ongoing;
}

GameState step(const Ruleset& rules, const GameState& state, int a1, int a2) {
    const int action_count = rules.action_count();
    if (a1 < 0 || a1 >= action_count || a2 < 0 || a2 >= action_count)
        throw std::out_of_range("action id outside the action set");
    if (round_status(state) != RoundStatus::Ongoing) return state;

    GameState s = state;
    s.frame += 1;

    // Assignment and frame advance. Facing reads the pre-step opponent
    // position, so the two fighters can be processed in either order.
    for (Player p : {Player::P1, Player::P2}) {
        FighterState& f = s.fighter(p);
        const int opponent_x = state.fighter(other(p)).x;
        if (f.down_frames > 0) {
            f.down_frames -= 1;
            continue;
        }
        if (f.current_action != kNoAction) {
            f.action_frame += 1;
            continue;
        }
        if (f.stage == Stage::Down) {
            // Lying time is over; the get-up action is forced.
            start_action(rules, f, rules.character.recover_action, opponent_x);
            f.getting_up = true;
        } else {
            const int requested = p == Player::P1 ? a1 : a2;
            if (action_legal(rules, f, requested)) start_action(rules, f, requested, opponent_x);
            // Illegal request: the fighter simply idles this frame.
        }
    }

    // Movement, then gravity.
    for (Player p : {Player::P1, Player::P2}) {
        FighterState& f = s.fighter(p);
        int dx = 0, dy = 0;
        if (f.current_action != kNoAction && f.down_frames == 0) {
            const ActionSpec& a = rules.character.action(f.current_action);
            dx = f.facing == Facing::Right ? a.move_dx : -a.move_dx;
            dy = a.move_dy;
        }
        f.x = clamp_int(f.x + dx, 0, rules.character.arena_width);
        f.y = clamp_int(f.y + dy - rules.config.gravity, 0, rules.character.arena_height);
    }

    // Hit detection: both directions evaluated on the same intra-frame
    // snapshot, so trades resolve simultaneously.
    int landed_attack[2] = {kNoAction, kNoAction};
    for (Player p : {Player::P1, Player::P2}) {
        const FighterState& att = s.fighter(p);
        const FighterState& def = s.fighter(other(p));
        if (att.current_action == kNoAction || att.down_frames > 0) continue;
        const ActionSpec& a = rules.character.action(att.current_action);
        if (!a.is_attack() || !in_active_window(a, att.action_frame)) continue;
        if (state.fighter(other(p)).stage == Stage::Down) continue;  // downed = untouchable
        if (guarding(rules, def)) continue;
        if (in_reach(a, att, def)) landed_attack[p == Player::P1 ? 0 : 1] = att.current_action;
    }
    for (Player p : {Player::P1, Player::P2}) {
        const int attack = landed_attack[p == Player::P1 ? 0 : 1];
        if (attack == kNoAction) continue;  // a trade may clear the attacker's own action
        FighterState& att = s.fighter(p);
        FighterState& def = s.fighter(other(p));
        const ActionSpec& a = rules.character.action(attack);
        def.hp = std::max(0, def.hp - a.damage);
        def.current_action = kNoAction;
        def.action_frame = 0;
        def.getting_up = false;
        def.down_frames = rules.config.down_duration;
        def.y = 0;  // knocked to the floor
        att.energy = std::min(rules.character.max_energy, att.energy + a.energy_gain_on_hit);
    }

    // Completion and stage bookkeeping.
    for (Player p : {Player::P1, Player::P2}) {
        FighterState& f = s.fighter(p);
        if (f.current_action != kNoAction &&
            f.action_frame >= rules.character.action(f.current_action).total_frames() - 1) {
            f.current_action = kNoAction;
            f.action_frame = 0;
            f.getting_up = false;
        }
        f.stage = recompute_stage(rules, f);
    }
    return s;
}

GameState advance_gene(const Ruleset& rules, const GameState& state, int a1, int a2, int* frames) {
    GameState s = state;
    int advanced = 0;
    while (advanced < rules.config.gene_frame_cap && round_status(s) == RoundStatus::Ongoing) {
        s = step(rules, s, a1, a2);
        ++advanced;
        if (s.p1.idle() && s.p2.idle()) break;
    }
    if (frames) *frames = advanced;
    return s;
}

Observation observe(std::span<const GameState> history, Player /*player*/, int delay) {
    const auto size = static_cast<int>(history.size());
    const int index = std::max(0, size - 1 - delay);
    return Observation{history[static_cast<size_t>(index)], delay};
}

FeatureArray extract_features(const Ruleset& rules, const GameState& state, Player perspective) {
    const FighterState& self = state.fighter(perspective);
    const FighterState& opp = state.fighter(other(perspective));
    const double hp_norm = rules.character.max_hp;
    const double en_norm = std::max(1, rules.character.max_energy);
    const double w = rules.character.arena_width;
    const double h = rules.character.arena_height;

    FeatureArray f{};
    f[0] = self.hp / hp_norm;
    f[1] = opp.hp / hp_norm;
    f[2] = self.energy / en_norm;
    f[3] = opp.energy / en_norm;
    f[4] = self.x / w;
    f[5] = self.y / h;
    f[6] = opp.x / w;
    f[7] = opp.y / h;
    f[8 + static_cast<int>(self.stage)] = 1.0;
    f[12 + static_cast<int>(opp.stage)] = 1.0;
    f[16] = std::abs(self.x - opp.x) / w;
    f[17] = std::abs(self.y - opp.y) / h;
    for (double& v : f) v = std::clamp(v, 0.0, 1.0);
    return f;
}

GameState mirrored(const Ruleset& rules, const GameState& state) {
    GameState m = state;
    m.p1 = state.p2;
    m.p2 = state.p1;
    for (Player p : {Player::P1, Player::P2}) {
        FighterState& f = m.fighter(p);
        f.x = rules.character.arena_width - f.x;
        f.facing = f.facing == Facing::Right ? Facing::Left : Facing::Right;
    }
    return m;
}

}  // namespace rheaom
