#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "rheaom/action_set.hpp"
#include "rheaom/character.hpp"

namespace rheaom {

enum class Stage : uint8_t { Stand, Crouch, Air, Down };
enum class Facing : uint8_t { Left, Right };
enum class Player : uint8_t { P1, P2 };
enum class RoundStatus : uint8_t { Ongoing, P1Win, P2Win, Draw };

inline Player other(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }

constexpr int kNoAction = -1;

struct FighterState {
    int hp = 0;
    int energy = 0;
    int x = 0;
    int y = 0;
    Stage stage = Stage::Stand;
    int current_action = kNoAction;
    int action_frame = 0;
    int down_frames = 0;      // remaining immobile frames after a knockdown
    bool getting_up = false;  // executing the forced get-up action
    Facing facing = Facing::Right;

    bool busy() const { return current_action != kNoAction || down_frames > 0; }
    bool idle() const { return !busy(); }

    bool operator==(const FighterState&) const = default;
};

struct GameState {
    int frame = 0;
    FighterState p1, p2;
    int max_hp = 400;
    int round_limit = 3600;

    FighterState& fighter(Player p) { return p == Player::P1 ? p1 : p2; }
    const FighterState& fighter(Player p) const { return p == Player::P1 ? p1 : p2; }

    bool operator==(const GameState&) const = default;
};

struct Observation {
    GameState snapshot;
    int delay = 0;
};

// Engine constants that are not per-character frame data.
struct EngineConfig {
    int down_duration = 20;   // frames spent lying down after a knockdown
    int gravity = 2;          // downward pull per frame, arena units
    int gene_frame_cap = 60;  // max frames one forward-model gene advance may take
};

struct Ruleset {
    CharacterData character;
    EngineConfig config;

    int action_count() const { return character.action_count(); }
};

Ruleset make_ruleset(const CharacterData& character, const EngineConfig& config = {});

GameState initial_state(const Ruleset& rules);

bool action_legal(const Ruleset& rules, const FighterState& fighter, int action);
ActionSet legal_actions(const Ruleset& rules, const GameState& state, Player player);

// Advances one frame with simultaneous moves. A fighter that is mid-action
// ignores its parameter; an idle fighter whose request is illegal stays idle
// for the frame. Throws std::out_of_range if an action id is outside [0, A).
// Terminal states are returned unchanged.
GameState step(const Ruleset& rules, const GameState& state, int a1, int a2);

// Applies one gene of a plan: steps until both fighters are idle again, the
// frame cap elapses, or the round ends. Idle fighters re-issue their gene's
// action. Returns the number of frames advanced through *frames if non-null.
GameState advance_gene(const Ruleset& rules, const GameState& state, int a1, int a2,
                       int* frames = nullptr);

RoundStatus round_status(const GameState& state);

// Snapshot visible to an agent: the state `delay` frames ago, clamped to the
// start of the round while the window is still filling.
Observation observe(std::span<const GameState> history, Player player, int delay);

constexpr int kFeatureCount = 18;
using FeatureArray = std::array<double, kFeatureCount>;

// hp x2, energy x2, x/y for both, one-hot stage x8, |dx| and |dy|; the
// perspective fighter's values come first and everything lands in [0, 1].
FeatureArray extract_features(const Ruleset& rules, const GameState& state, Player perspective);

// Swaps the players and reflects the arena left-right; used by the symmetry
// checks. mirrored(step(s, a1, a2)) == step(mirrored(s), a2, a1).
GameState mirrored(const Ruleset& rules, const GameState& state);

}  // namespace rheaom
