#pragma once

#include <string>
#include <vector>

namespace rheaom {

enum class Domain { Ground, Air };

// Frame data for one action. Durations are in frames, distances in arena
// units, damage/energy in points. move_dx is relative to the fighter's
// facing (positive = toward where it faces).
struct ActionSpec {
    int id = 0;
    std::string name;
    Domain domain = Domain::Ground;
    int startup = 0;
    int active = 0;
    int recover = 0;
    int damage = 0;
    int energy_cost = 0;
    int energy_gain_on_hit = 0;
    int reach_x = 0;
    int reach_y = 0;
    int move_dx = 0;
    int move_dy = 0;
    bool guard = false;
    bool crouch = false;  // fighter holds the Crouch stance while executing

    int total_frames() const { return startup + active + recover; }
    bool is_attack() const { return damage > 0; }
};

struct CharacterData {
    std::string name;
    int max_hp = 400;
    int max_energy = 100;
    int arena_width = 200;
    int arena_height = 80;
    std::vector<ActionSpec> actions;

    // Designated ids, resolved by resolve_special_actions().
    int neutral_action = 0;  // the do-nothing action (opponent model "None")
    int recover_action = 0;  // the forced get-up action after a knockdown

    int action_count() const { return static_cast<int>(actions.size()); }
    const ActionSpec& action(int id) const { return actions[static_cast<size_t>(id)]; }

    void resolve_special_actions();
    // Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

// Built-in presets: "balanced", "fast_weak", "slow_strong".
CharacterData character_preset(const std::string& name);
std::vector<std::string> character_preset_names();

// Grows a roster to `count` actions by adding tuned variants of the base
// attacks; used for large-action-set parity runs.
CharacterData extended_roster(const CharacterData& base, int count);

CharacterData load_character_file(const std::string& path);
void save_character_file(const CharacterData& character, const std::string& path);
std::string character_to_json(const CharacterData& character);
CharacterData character_from_json(const std::string& text);

}  // namespace rheaom
