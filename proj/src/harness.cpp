#include "rheaom/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace rheaom {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Stand: return "Stand";
        case Stage::Crouch: return "Crouch";
        case Stage::Air: return "Air";
        case Stage::Down: return "Down";
    }
    return "Stand";
}

const char* winner_name(RoundStatus s) {
    switch (s) {
        case RoundStatus::P1Win: return "P1";
        case RoundStatus::P2Win: return "P2";
        case RoundStatus::Draw: return "Draw";
        case RoundStatus::Ongoing: return "Ongoing";
    }
    return "Draw";
}

json fighter_json(const FighterState& f) {
    json j;
    j["hp"] = f.hp;
    j["energy"] = f.energy;
    j["x"] = f.x;
    j["y"] = f.y;
    j["stage"] = stage_name(f.stage);
    j["action"] = f.current_action;
    j["action_frame"] = f.action_frame;
    j["facing"] = f.facing == Facing::Right ? "Right" : "Left";
    return j;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Transition recording for one learning agent: it models its opponent, so it
// snapshots the opponent's commits and fills rewards in lazily when the next
// commit (or the end of the round) shows the post-transition state.
struct Recorder {
    RoundDataset* dataset = nullptr;
    Player modeled = Player::P2;
    TrainConfig::RewardMode mode = TrainConfig::RewardMode::Absolute;
    bool open = false;
    int prev_hp_modeled = 0, prev_hp_other = 0;

    void on_commit(const Ruleset& rules, const GameState& pre, int action) {
        if (!dataset) return;
        finalize(pre, false);
        TransitionRecord rec;
        rec.features = extract_features(rules, pre, modeled);
        rec.action = action;
        rec.legal = legal_actions(rules, pre, modeled);
        dataset->push_back(rec);
        open = true;
        prev_hp_modeled = pre.fighter(modeled).hp;
        prev_hp_other = pre.fighter(other(modeled)).hp;
    }

    void finalize(const GameState& at, bool terminal) {
        if (!dataset || !open) return;
        TransitionRecord& rec = dataset->back();
        if (mode == TrainConfig::RewardMode::Absolute) {
            rec.reward = reward_signal(at, modeled);
        } else {
            const int d_modeled = at.fighter(modeled).hp - prev_hp_modeled;
            const int d_other = at.fighter(other(modeled)).hp - prev_hp_other;
            rec.reward = static_cast<double>(d_modeled - d_other) / at.max_hp;
        }
        rec.terminal = terminal;
        if (terminal) open = false;
    }
};

}  // namespace

std::string RoundLog::to_jsonl() const {
    std::ostringstream out;
    for (const auto& e : entries) {
        json j;
        j["frame"] = e.frame;
        j["p1"] = fighter_json(e.p1);
        j["p2"] = fighter_json(e.p2);
        j["a1"] = e.a1;
        j["a2"] = e.a2;
        out << j.dump() << "\n";
    }
    return out.str();
}

std::string trace_to_jsonl(const std::vector<DecisionTraceEntry>& trace) {
    std::ostringstream out;
    for (const auto& e : trace) {
        json j;
        j["frame"] = e.frame;
        j["player"] = e.player == Player::P1 ? 1 : 2;
        j["generations"] = e.generations;
        j["forward_calls"] = e.forward_calls;
        j["best_fitness"] = e.best_fitness;
        j["chosen_action"] = e.chosen_action;
        out << j.dump() << "\n";
    }
    return out.str();
}

RoundResult run_round(const Ruleset& rules, Agent& p1, Agent& p2, uint64_t seed, int delay,
                      const TrainConfig& train_cfg, RoundLog* log,
                      std::vector<DecisionTraceEntry>* trace) {
    Agent* agents[2] = {&p1, &p2};
    agents[0]->set_player(Player::P1);
    agents[1]->set_player(Player::P2);
    for (int i = 0; i < 2; ++i) agents[i]->begin_round(Rng::derive(seed, static_cast<uint64_t>(i)));

    Recorder recorders[2];
    for (int i = 0; i < 2; ++i) {
        recorders[i].dataset = agents[i]->dataset();
        recorders[i].modeled = i == 0 ? Player::P2 : Player::P1;
        recorders[i].mode = train_cfg.reward_mode;
    }

    std::vector<GameState> history;
    history.reserve(1024);
    history.push_back(initial_state(rules));

    RoundResult result;
    GameState state = history.back();

    while (round_status(state) == RoundStatus::Ongoing) {
        const Observation obs[2] = {observe(history, Player::P1, delay),
                                    observe(history, Player::P2, delay)};
        int issued[2];
        for (int i = 0; i < 2; ++i) {
            Agent& agent = *agents[i];
            agent.on_frame(obs[i]);
            const Player p = i == 0 ? Player::P1 : Player::P2;
            const FighterState& f = state.fighter(p);
            if (f.idle()) {
                int action = agent.decide(rules, obs[i]);
                PlayerRoundStats& st = result.stats[i];
                st.decisions += 1;
                if (const DecisionStats* ds = agent.last_decision()) {
                    st.forward_calls += ds->forward_calls;
                    st.max_forward_calls = std::max(st.max_forward_calls, ds->forward_calls);
                    st.mean_generations += ds->generations;
                    if (trace)
                        trace->push_back({state.frame, p, ds->generations, ds->forward_calls,
                                          ds->best_fitness, action});
                    const DecisionBudget* budget = agent.decision_budget();
                    if (budget && budget->mode == DecisionBudget::Mode::ForwardCalls &&
                        ds->forward_calls > budget->limit) {
                        action = rules.character.neutral_action;
                        result.budget_violations += 1;
                    }
                }
                agent.note_committed(state.frame, action);
                issued[i] = action;
            } else {
                issued[i] = f.current_action != kNoAction ? f.current_action
                                                          : rules.character.neutral_action;
            }
        }

        // Record the modeled player's commits against the pre-step state.
        for (int i = 0; i < 2; ++i) {
            const Player modeled = recorders[i].modeled;
            const FighterState& f = state.fighter(modeled);
            if (!f.idle()) continue;
            const int req = issued[modeled == Player::P1 ? 0 : 1];
            int actual = kNoAction;
            if (f.stage == Stage::Down)
                actual = rules.character.recover_action;
            else if (action_legal(rules, f, req))
                actual = req;
            if (actual != kNoAction) recorders[i].on_commit(rules, state, actual);
        }

        state = step(rules, state, issued[0], issued[1]);
        history.push_back(state);
        if (log) log->entries.push_back({state.frame, state.p1, state.p2, issued[0], issued[1]});
    }

    for (auto& rec : recorders) rec.finalize(state, /*terminal=*/true);

    result.winner = round_status(state);
    result.hp_diff = state.p1.hp - state.p2.hp;
    result.frames = state.frame;
    for (int i = 0; i < 2; ++i)
        if (result.stats[i].decisions > 0) result.stats[i].mean_generations /= result.stats[i].decisions;
    return result;
}

void ExperimentConfig::validate() const {
    if (rounds < 1) throw std::invalid_argument("config key 'rounds' must be >= 1");
    if (repeats < 1) throw std::invalid_argument("config key 'repeats' must be >= 1");
    if (delay < 0) throw std::invalid_argument("config key 'delay' must be >= 0");
    evolution.validate();
    mcts.validate();
    train.validate();
}

namespace {

DecisionBudget budget_from_json(const json& j) {
    DecisionBudget b;
    if (j.contains("mode")) {
        const std::string mode = j.at("mode").get<std::string>();
        if (mode == "calls")
            b.mode = DecisionBudget::Mode::ForwardCalls;
        else if (mode == "ms")
            b.mode = DecisionBudget::Mode::WallClockMs;
        else
            throw std::invalid_argument("config key 'budget.mode' must be 'calls' or 'ms'");
    }
    if (j.contains("limit")) b.limit = j.at("limit").get<int>();
    return b;
}

json budget_to_json(const DecisionBudget& b) {
    return {{"mode", b.mode == DecisionBudget::Mode::ForwardCalls ? "calls" : "ms"},
            {"limit", b.limit}};
}

AgentSpec agent_from_json(const json& j) {
    AgentSpec spec;
    spec.kind = agent_kind_from_name(j.at("kind").get<std::string>());
    if (j.contains("om") && !j.at("om").is_null())
        spec.om = model_kind_from_name(j.at("om").get<std::string>());
    if (j.contains("model") && !j.at("model").is_null())
        spec.model_path = j.at("model").get<std::string>();
    if (j.contains("params")) {
        const json& p = j.at("params");
        if (p.contains("attack_range")) spec.script.attack_range = p.at("attack_range").get<int>();
        if (p.contains("guard_frames")) spec.script.guard_frames = p.at("guard_frames").get<int>();
    }
    return spec;
}

json agent_to_json(const AgentSpec& spec) {
    json j;
    j["kind"] = agent_kind_name(spec.kind);
    j["om"] = model_kind_name(spec.om);
    j["model"] = spec.model_path.empty() ? json(nullptr) : json(spec.model_path);
    j["params"] = {{"attack_range", spec.script.attack_range},
                   {"guard_frames", spec.script.guard_frames}};
    return j;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid json: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        const auto& agents = doc.at("agents");
        if (!agents.is_array() || agents.size() != 2)
            throw std::invalid_argument("config key 'agents' must list exactly two agents");
        cfg.agents[0] = agent_from_json(agents[0]);
        cfg.agents[1] = agent_from_json(agents[1]);
        if (doc.contains("character")) cfg.character = doc.at("character").get<std::string>();
        if (doc.contains("rounds")) cfg.rounds = doc.at("rounds").get<int>();
        if (doc.contains("repeats")) cfg.repeats = doc.at("repeats").get<int>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<uint64_t>();
        if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
        if (doc.contains("delay")) cfg.delay = doc.at("delay").get<int>();
        if (doc.contains("evolution")) {
            const json& e = doc.at("evolution");
            if (e.contains("n")) cfg.evolution.n = e.at("n").get<int>();
            if (e.contains("k")) cfg.evolution.k = e.at("k").get<int>();
            if (e.contains("l")) cfg.evolution.l = e.at("l").get<int>();
            if (e.contains("p_m")) cfg.evolution.p_m = e.at("p_m").get<double>();
            if (e.contains("lambda")) cfg.evolution.lambda = e.at("lambda").get<double>();
            if (e.contains("shift_buffer")) cfg.evolution.shift_buffer = e.at("shift_buffer").get<bool>();
            if (e.contains("budget")) cfg.evolution.budget = budget_from_json(e.at("budget"));
        }
        if (doc.contains("mcts")) {
            const json& m = doc.at("mcts");
            if (m.contains("uct_c")) cfg.mcts.uct_c = m.at("uct_c").get<double>();
            if (m.contains("max_depth")) cfg.mcts.max_depth = m.at("max_depth").get<int>();
            if (m.contains("budget")) cfg.mcts.budget = budget_from_json(m.at("budget"));
        }
        if (doc.contains("train")) {
            const json& t = doc.at("train");
            if (t.contains("lr")) cfg.train.lr = t.at("lr").get<double>();
            if (t.contains("gamma")) cfg.train.gamma = t.at("gamma").get<double>();
            if (t.contains("n_step")) cfg.train.n_step = t.at("n_step").get<int>();
            if (t.contains("minibatch")) cfg.train.minibatch = t.at("minibatch").get<int>();
            if (t.contains("epochs_per_round"))
                cfg.train.epochs_per_round = t.at("epochs_per_round").get<int>();
            if (t.contains("reward")) {
                const std::string r = t.at("reward").get<std::string>();
                if (r == "absolute")
                    cfg.train.reward_mode = TrainConfig::RewardMode::Absolute;
                else if (r == "delta")
                    cfg.train.reward_mode = TrainConfig::RewardMode::Delta;
                else
                    throw std::invalid_argument("config key 'train.reward' must be 'absolute' or 'delta'");
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json doc;
    doc["agents"] = {agent_to_json(cfg.agents[0]), agent_to_json(cfg.agents[1])};
    doc["character"] = cfg.character;
    doc["rounds"] = cfg.rounds;
    doc["repeats"] = cfg.repeats;
    doc["seed"] = cfg.seed;
    doc["out"] = cfg.out_dir;
    doc["delay"] = cfg.delay;
    doc["evolution"] = {{"n", cfg.evolution.n},
                        {"k", cfg.evolution.k},
                        {"l", cfg.evolution.l},
                        {"p_m", cfg.evolution.p_m},
                        {"lambda", cfg.evolution.lambda},
                        {"shift_buffer", cfg.evolution.shift_buffer},
                        {"budget", budget_to_json(cfg.evolution.budget)}};
    doc["mcts"] = {{"uct_c", cfg.mcts.uct_c},
                   {"max_depth", cfg.mcts.max_depth},
                   {"budget", budget_to_json(cfg.mcts.budget)}};
    doc["train"] = {{"lr", cfg.train.lr},
                    {"gamma", cfg.train.gamma},
                    {"n_step", cfg.train.n_step},
                    {"minibatch", cfg.train.minibatch},
                    {"epochs_per_round", cfg.train.epochs_per_round},
                    {"reward", cfg.train.reward_mode == TrainConfig::RewardMode::Absolute
                                   ? "absolute"
                                   : "delta"}};
    return doc.dump(2) + "\n";
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

void apply_override(std::string& config_json, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override must look like key=value: " + assignment);
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json doc = json::parse(config_json);
    json* node = &doc;
    size_t begin = 0;
    std::vector<std::string> parts;
    while (begin <= path.size()) {
        const auto dot = path.find('.', begin);
        parts.push_back(path.substr(begin, dot == std::string::npos ? path.size() - begin : dot - begin));
        if (dot == std::string::npos) break;
        begin = dot + 1;
    }
    for (size_t i = 0; i < parts.size(); ++i) {
        const std::string& part = parts[i];
        if (node->is_array()) {
            size_t index = 0;
            try {
                index = std::stoul(part);
            } catch (...) {
                throw std::invalid_argument("override key '" + path + "': '" + part +
                                            "' is not an array index");
            }
            if (index >= node->size())
                throw std::invalid_argument("override key '" + path + "': index out of range");
            node = &(*node)[index];
        } else if (node->is_object() && node->contains(part)) {
            node = &(*node)[part];
        } else {
            throw std::invalid_argument("override key '" + path + "' does not exist in the config");
        }
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (...) {
        parsed = value;  // plain string value
    }
    *node = parsed;
    config_json = doc.dump();
}

int worker_count(int requested, int cells) {
    int n = requested;
    if (const char* env = std::getenv("RHEAOM_THREADS"); env && *env) {
        const int cap = std::atoi(env);
        if (cap > 0) n = n > 0 ? std::min(n, cap) : cap;
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    return std::max(1, std::min(n, cells));
}

namespace {

void aggregate(SeriesResult& series) {
    int64_t hp_sum = 0, frame_sum = 0;
    int total = 0;
    for (const auto& repeat : series.by_repeat) {
        for (const auto& r : repeat) {
            ++total;
            if (r.winner == RoundStatus::P1Win)
                ++series.p1_wins;
            else if (r.winner == RoundStatus::P2Win)
                ++series.p2_wins;
            else
                ++series.draws;
            hp_sum += r.hp_diff;
            frame_sum += r.frames;
            series.budget_violations += r.budget_violations;
            series.max_train_ms =
                std::max({series.max_train_ms, r.stats[0].train_ms, r.stats[1].train_ms});
        }
    }
    if (total == 0) return;
    series.p1_win_rate = (series.p1_wins + 0.5 * series.draws) / total;
    series.ci95 = 1.96 * std::sqrt(series.p1_win_rate * (1.0 - series.p1_win_rate) / total);
    series.mean_hp_diff = static_cast<double>(hp_sum) / total;
    series.mean_frames = static_cast<double>(frame_sum) / total;
}

Ruleset ruleset_for(const ExperimentConfig& cfg) {
    const bool is_path = cfg.character.find('/') != std::string::npos ||
                         (cfg.character.size() > 5 &&
                          cfg.character.substr(cfg.character.size() - 5) == ".json");
    if (is_path) return make_ruleset(load_character_file(cfg.character));
    return make_ruleset(character_preset(cfg.character));
}

std::vector<RoundResult> run_repeat(const ExperimentConfig& cfg, const Ruleset& rules, int repeat,
                                    std::string models_dir) {
    const uint64_t repeat_seed = Rng::derive(cfg.seed, static_cast<uint64_t>(repeat));
    std::unique_ptr<Agent> agents[2];
    for (int i = 0; i < 2; ++i) {
        agents[i] = make_agent(cfg.agents[i], rules, cfg.evolution, cfg.mcts,
                               Rng::derive(repeat_seed, 100 + static_cast<uint64_t>(i)));
        agents[i]->set_player(i == 0 ? Player::P1 : Player::P2);
    }
    std::vector<RoundResult> results;
    results.reserve(static_cast<size_t>(cfg.rounds));
    for (int round = 0; round < cfg.rounds; ++round) {
        const uint64_t round_seed = Rng::derive(repeat_seed, static_cast<uint64_t>(round));
        RoundResult r = run_round(rules, *agents[0], *agents[1], round_seed, cfg.delay, cfg.train);
        for (int i = 0; i < 2; ++i) {
            Rng train_rng(Rng::derive(round_seed, 10 + static_cast<uint64_t>(i)));
            const TrainStats ts = agents[i]->finish_round(cfg.train, train_rng);
            r.stats[i].train_ms = ts.wall_ms;
        }
        results.push_back(r);
    }
    if (!models_dir.empty()) {
        for (int i = 0; i < 2; ++i) {
            const OpponentModel* om = agents[i]->opponent_model();
            if (!om || !om->learnable()) continue;
            const std::string path = models_dir + "/repeat" + std::to_string(repeat) + "_p" +
                                     std::to_string(i + 1) + "_" + cfg.agents[i].label() + ".json";
            save_model(om->net(), path);
        }
    }
    return results;
}

}  // namespace

SeriesResult run_series(const ExperimentConfig& cfg, int threads) {
    cfg.validate();
    const Ruleset rules = ruleset_for(cfg);
    const auto start = std::chrono::steady_clock::now();

    std::string models_dir;
    if (!cfg.out_dir.empty()) {
        models_dir = cfg.out_dir + "/models";
        fs::create_directories(models_dir);
    }

    SeriesResult series;
    series.rounds = cfg.rounds;
    series.repeats = cfg.repeats;
    series.by_repeat.resize(static_cast<size_t>(cfg.repeats));

    const int workers = worker_count(threads, cfg.repeats);
    if (workers <= 1) {
        for (int r = 0; r < cfg.repeats; ++r)
            series.by_repeat[static_cast<size_t>(r)] = run_repeat(cfg, rules, r, models_dir);
    } else {
        std::vector<std::thread> pool;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < cfg.repeats; r = next.fetch_add(1))
                    series.by_repeat[static_cast<size_t>(r)] = run_repeat(cfg, rules, r, models_dir);
            });
        for (auto& t : pool) t.join();
    }

    aggregate(series);
    series.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        std::ofstream(cfg.out_dir + "/results.csv") << results_csv(series);
        std::ofstream(cfg.out_dir + "/series.json") << series_json(cfg, series);
        const int window = std::min(50, cfg.rounds);
        std::ofstream(cfg.out_dir + "/curves.csv") << curves_csv(convergence_curves(series, window));
    }
    return series;
}

CurveTable convergence_curves(const SeriesResult& series, int window) {
    if (window < 1) throw std::invalid_argument("curve window must be >= 1");
    if (window > series.rounds) throw std::invalid_argument("curve window exceeds the round count");
    CurveTable table;
    table.win_rate.assign(static_cast<size_t>(series.rounds), 0.0);
    table.hp_diff.assign(static_cast<size_t>(series.rounds), 0.0);
    for (const auto& repeat : series.by_repeat) {
        for (int r = 0; r < series.rounds; ++r) {
            const int lo = std::max(0, r - window + 1);
            double win = 0.0, hp = 0.0;
            for (int i = lo; i <= r; ++i) {
                win += repeat[static_cast<size_t>(i)].p1_win_value();
                hp += repeat[static_cast<size_t>(i)].hp_diff;
            }
            const int span = r - lo + 1;
            table.win_rate[static_cast<size_t>(r)] += win / span;
            table.hp_diff[static_cast<size_t>(r)] += hp / span;
        }
    }
    const double repeats = static_cast<double>(series.repeats);
    for (auto& v : table.win_rate) v /= repeats;
    for (auto& v : table.hp_diff) v /= repeats;
    return table;
}

std::string results_csv(const SeriesResult& series) {
    std::ostringstream out;
    out << "repeat,round,winner,hp_diff,frames,fwd_calls_p1,fwd_calls_p2\n";
    for (size_t rep = 0; rep < series.by_repeat.size(); ++rep) {
        const auto& rounds = series.by_repeat[rep];
        for (size_t r = 0; r < rounds.size(); ++r) {
            const RoundResult& res = rounds[r];
            out << rep << ',' << r << ',' << winner_name(res.winner) << ',' << res.hp_diff << ','
                << res.frames << ',' << res.stats[0].forward_calls << ','
                << res.stats[1].forward_calls << "\n";
        }
    }
    return out.str();
}

std::string series_json(const ExperimentConfig& cfg, const SeriesResult& series) {
    json doc;
    doc["config"] = json::parse(config_to_json(cfg));
    doc["rounds"] = series.rounds;
    doc["repeats"] = series.repeats;
    doc["p1_win_rate"] = series.p1_win_rate;
    doc["ci95"] = series.ci95;
    doc["p1_wins"] = series.p1_wins;
    doc["p2_wins"] = series.p2_wins;
    doc["draws"] = series.draws;
    doc["mean_hp_diff"] = series.mean_hp_diff;
    doc["mean_frames"] = series.mean_frames;
    doc["budget_violations"] = series.budget_violations;
    doc["max_train_ms"] = series.max_train_ms;
    doc["elapsed_s"] = series.elapsed_s;
    return doc.dump(2) + "\n";
}

std::string curves_csv(const CurveTable& curves) {
    std::ostringstream out;
    out << "round,win_rate,hp_diff\n";
    for (size_t r = 0; r < curves.win_rate.size(); ++r)
        out << r << ',' << format_double(curves.win_rate[r]) << ','
            << format_double(curves.hp_diff[r]) << "\n";
    return out.str();
}

double win_rate_from_results_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::getline(in, line);  // header
    int total = 0;
    double points = 0.0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t first = line.find(',');
        size_t second = line.find(',', first + 1);
        size_t third = line.find(',', second + 1);
        const std::string winner = line.substr(second + 1, third - second - 1);
        ++total;
        if (winner == "P1")
            points += 1.0;
        else if (winner == "Draw")
            points += 0.5;
    }
    return total > 0 ? points / total : 0.0;
}

}  // namespace rheaom
