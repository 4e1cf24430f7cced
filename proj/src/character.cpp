#include "rheaom/character.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rheaom {

using nlohmann::json;

namespace {

struct AttackTune {
    double damage = 1.0;
    int startup = 0;
    int recover = 0;
    int reach = 0;
};

ActionSpec act(int id, const char* name, Domain domain, int startup, int active, int recover,
               int damage, int cost, int gain, int reach_x, int reach_y, int dx, int dy,
               bool guard = false, bool crouch = false) {
    ActionSpec a;
    a.id = id;
    a.name = name;
    a.domain = domain;
    a.startup = startup;
    a.active = active;
    a.recover = recover;
    a.damage = damage;
    a.energy_cost = cost;
    a.energy_gain_on_hit = gain;
    a.reach_x = reach_x;
    a.reach_y = reach_y;
    a.move_dx = dx;
    a.move_dy = dy;
    a.guard = guard;
    a.crouch = crouch;
    return a;
}

CharacterData base_character(const std::string& name, int walk, const AttackTune& t) {
    auto dmg = [&](int d) { return std::max(1, static_cast<int>(d * t.damage + 0.5)); };
    auto su = [&](int s) { return std::max(1, s + t.startup); };
    auto rc = [&](int r) { return std::max(2, r + t.recover); };
    auto rx = [&](int r) { return std::max(8, r + t.reach); };

    CharacterData c;
    c.name = name;
    c.max_hp = 400;
    c.max_energy = 100;
    c.arena_width = 200;
    c.arena_height = 80;
    c.actions = {
        act(0, "STAND", Domain::Ground, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0),
        act(1, "FORWARD_WALK", Domain::Ground, 0, 0, 4, 0, 0, 0, 0, 0, walk, 0),
        act(2, "BACK_STEP", Domain::Ground, 0, 0, 4, 0, 0, 0, 0, 0, -walk, 0),
        act(3, "RECOVER", Domain::Ground, 0, 0, 8, 0, 0, 0, 0, 0, 0, 0),
        act(4, "JUMP_UP", Domain::Ground, 0, 0, 8, 0, 0, 0, 0, 0, 0, 6),
        act(5, "JUMP_FORWARD", Domain::Ground, 0, 0, 8, 0, 0, 0, 0, 0, 2, 6),
        act(6, "GUARD", Domain::Ground, 0, 15, 5, 0, 0, 0, 0, 0, 0, 0, /*guard=*/true),
        act(7, "CROUCH", Domain::Ground, 0, 0, 6, 0, 0, 0, 0, 0, 0, 0, false, /*crouch=*/true),
        act(8, "JAB", Domain::Ground, su(3), 2, rc(6), dmg(8), 0, 5, rx(18), 10, 0, 0),
        act(9, "STRAIGHT", Domain::Ground, su(6), 3, rc(9), dmg(15), 0, 8, rx(24), 10, 0, 0),
        act(10, "KICK", Domain::Ground, su(9), 3, rc(12), dmg(22), 0, 12, rx(30), 12, 0, 0),
        act(11, "HEAVY", Domain::Ground, su(13), 4, rc(16), dmg(30), 0, 15, rx(34), 12, 0, 0),
        act(12, "AIR_JAB", Domain::Air, su(2), 2, rc(4), dmg(6), 0, 4, rx(16), 16, 0, 0),
        act(13, "AIR_KICK", Domain::Air, su(4), 3, rc(7), dmg(12), 0, 8, rx(22), 18, 0, 0),
        act(14, "AIR_DIVE", Domain::Air, su(6), 4, rc(8), dmg(18), 0, 10, rx(26), 22, 0, -2),
        act(15, "SPECIAL", Domain::Ground, su(10), 4, rc(14), dmg(45), 50, 0, rx(40), 16, 0, 0),
    };
    c.resolve_special_actions();
    return c;
}

const char* domain_name(Domain d) { return d == Domain::Air ? "Air" : "Ground"; }

Domain domain_from(const std::string& s) {
    if (s == "Ground") return Domain::Ground;
    if (s == "Air") return Domain::Air;
    throw std::invalid_argument("unknown action domain: " + s);
}

}  // namespace

void CharacterData::resolve_special_actions() {
    auto find_named = [&](const char* name, int fallback) {
        for (const auto& a : actions)
            if (a.name == name) return a.id;
        return fallback;
    };
    // Fall back to the first free ground no-op if the names are absent.
    int noop = 0;
    for (const auto& a : actions) {
        if (a.domain == Domain::Ground && !a.is_attack() && a.energy_cost == 0 &&
            a.move_dx == 0 && a.move_dy == 0 && !a.guard && !a.crouch) {
            noop = a.id;
            break;
        }
    }
    neutral_action = find_named("STAND", noop);
    recover_action = find_named("RECOVER", noop);
}

void CharacterData::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("character: " + msg); };
    if (actions.empty()) fail("empty action set");
    if (max_hp <= 0 || max_energy < 0) fail("non-positive max_hp or negative max_energy");
    if (arena_width <= 0 || arena_height <= 0) fail("non-positive arena size");
    int free_actions = 0;
    bool has_ground = false;
    for (size_t i = 0; i < actions.size(); ++i) {
        const auto& a = actions[i];
        if (a.id != static_cast<int>(i)) fail("action ids must be 0..A-1 in order");
        if (a.startup < 0 || a.active < 0 || a.recover < 0) fail(a.name + ": negative stage length");
        if (a.total_frames() < 1) fail(a.name + ": total duration must be >= 1");
        if (a.is_attack() && a.active < 1) fail(a.name + ": attack needs active frames");
        if (a.damage < 0 || a.energy_cost < 0 || a.energy_gain_on_hit < 0)
            fail(a.name + ": negative damage or energy");
        if (a.reach_x < 0 || a.reach_y < 0) fail(a.name + ": negative reach");
        if (a.energy_cost == 0) ++free_actions;
        if (a.domain == Domain::Ground) has_ground = true;
    }
    if (!has_ground) fail("no ground actions");
    if (free_actions * 2 < static_cast<int>(actions.size()))
        fail("fewer than half of the actions are energy-free");
    if (recover_action < 0 || recover_action >= action_count()) fail("bad recover action id");
    const auto& rec = actions[static_cast<size_t>(recover_action)];
    if (rec.is_attack() || rec.energy_cost != 0 || rec.domain != Domain::Ground)
        fail("recover action must be a free ground no-op");
}

CharacterData character_preset(const std::string& name) {
    if (name == "balanced") return base_character("balanced", 3, {});
    if (name == "fast_weak") return base_character("fast_weak", 4, {0.75, -1, -2, -2});
    if (name == "slow_strong") return base_character("slow_strong", 2, {1.4, 3, 4, 4});
    throw std::invalid_argument("unknown character preset: " + name);
}

std::vector<std::string> character_preset_names() {
    return {"balanced", "fast_weak", "slow_strong"};
}

CharacterData extended_roster(const CharacterData& base, int count) {
    if (count < base.action_count())
        throw std::invalid_argument("extended roster cannot shrink the action set");
    CharacterData c = base;
    c.name = base.name + "_x" + std::to_string(count);
    // Cycle through the attacks, nudging frame data so each variant is distinct.
    std::vector<int> attack_ids;
    for (const auto& a : base.actions)
        if (a.is_attack()) attack_ids.push_back(a.id);
    int next = base.action_count();
    int variant = 1;
    while (c.action_count() < count) {
        for (int id : attack_ids) {
            if (c.action_count() >= count) break;
            ActionSpec a = base.action(id);
            a.id = next++;
            a.name += "_V" + std::to_string(variant);
            a.startup = std::max(1, a.startup + variant);
            a.recover += variant;
            a.damage = std::max(1, a.damage - variant);
            a.reach_x += 2 * variant;
            c.actions.push_back(a);
        }
        ++variant;
    }
    c.resolve_special_actions();
    return c;
}

std::string character_to_json(const CharacterData& c) {
    json doc;
    doc["version"] = 1;
    doc["character"] = c.name;
    doc["max_hp"] = c.max_hp;
    doc["max_energy"] = c.max_energy;
    doc["arena"] = {{"width", c.arena_width}, {"height", c.arena_height}};
    json acts = json::array();
    for (const auto& a : c.actions) {
        json j;
        j["id"] = a.id;
        j["name"] = a.name;
        j["domain"] = domain_name(a.domain);
        j["startup"] = a.startup;
        j["active"] = a.active;
        j["recover"] = a.recover;
        j["damage"] = a.damage;
        j["energy_cost"] = a.energy_cost;
        j["energy_gain_on_hit"] = a.energy_gain_on_hit;
        j["reach_x"] = a.reach_x;
        j["reach_y"] = a.reach_y;
        j["move_dx"] = a.move_dx;
        j["move_dy"] = a.move_dy;
        j["guard"] = a.guard;
        if (a.crouch) j["crouch"] = true;
        acts.push_back(std::move(j));
    }
    doc["actions"] = std::move(acts);
    return doc.dump(2) + "\n";
}

CharacterData character_from_json(const std::string& text) {
    json doc = json::parse(text);
    CharacterData c;
    c.name = doc.at("character").get<std::string>();
    c.max_hp = doc.at("max_hp").get<int>();
    c.max_energy = doc.at("max_energy").get<int>();
    c.arena_width = doc.at("arena").at("width").get<int>();
    c.arena_height = doc.at("arena").at("height").get<int>();
    for (const auto& j : doc.at("actions")) {
        ActionSpec a;
        a.id = j.at("id").get<int>();
        a.name = j.at("name").get<std::string>();
        a.domain = domain_from(j.at("domain").get<std::string>());
        a.startup = j.at("startup").get<int>();
        a.active = j.at("active").get<int>();
        a.recover = j.at("recover").get<int>();
        a.damage = j.at("damage").get<int>();
        a.energy_cost = j.at("energy_cost").get<int>();
        a.energy_gain_on_hit = j.at("energy_gain_on_hit").get<int>();
        a.reach_x = j.at("reach_x").get<int>();
        a.reach_y = j.at("reach_y").get<int>();
        a.move_dx = j.at("move_dx").get<int>();
        a.move_dy = j.at("move_dy").get<int>();
        a.guard = j.at("guard").get<bool>();
        a.crouch = j.value("crouch", false);
        c.actions.push_back(std::move(a));
    }
    c.resolve_special_actions();
    c.validate();
    return c;
}

CharacterData load_character_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open character file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return character_from_json(buf.str());
}

void save_character_file(const CharacterData& character, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write character file: " + path);
    out << character_to_json(character);
}

}  // namespace rheaom
