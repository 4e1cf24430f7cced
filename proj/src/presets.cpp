#include "rheaom/presets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rheaom {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Matchup {
    std::string p1, p2;  // agent labels
};

AgentSpec spec_from_label(const std::string& label) {
    AgentSpec spec;
    if (label == "random") {
        spec.kind = AgentKind::Random;
    } else if (label == "scripted") {
        spec.kind = AgentKind::Scripted;
    } else if (label == "mcts") {
        spec.kind = AgentKind::Mcts;
        spec.om = ModelKind::None;
    } else if (label.rfind("mcts-", 0) == 0) {
        spec.kind = AgentKind::Mcts;
        spec.om = model_kind_from_name(label.substr(5));
    } else if (label == "rhea") {
        spec.kind = AgentKind::Rhea;
        spec.om = ModelKind::None;
    } else if (label.rfind("rheaom-", 0) == 0) {
        spec.kind = AgentKind::Rhea;
        spec.om = model_kind_from_name(label.substr(7));
    } else {
        throw std::invalid_argument("unknown agent label: " + label);
    }
    return spec;
}

struct PresetPlan {
    std::vector<Matchup> matchups;
    int rounds = 60;
    int repeats = 2;
    bool write_variant_curves = false;
};

PresetPlan plan_for(const std::string& name) {
    const std::vector<std::string> variants = {"rhea", "rheaom-random", "rheaom-sl", "rheaom-q",
                                               "rheaom-pg"};
    PresetPlan plan;
    if (name == "self-comparison") {
        for (size_t i = 0; i < variants.size(); ++i)
            for (size_t j = i + 1; j < variants.size(); ++j)
                plan.matchups.push_back({variants[i], variants[j]});
        plan.rounds = 60;
        plan.repeats = 2;
    } else if (name == "vs-baselines") {
        for (const auto& v : variants)
            for (const std::string opp : {"scripted", "mcts", "random"})
                plan.matchups.push_back({v, opp});
        plan.rounds = 60;
        plan.repeats = 2;
    } else if (name == "mcts-om") {
        for (const std::string v : {"rheaom-sl", "rheaom-pg"})
            for (const std::string opp : {"mcts-sl", "mcts-pg", "mcts"})
                plan.matchups.push_back({v, opp});
        plan.rounds = 100;
        plan.repeats = 2;
    } else if (name == "convergence") {
        for (const auto& v : variants) plan.matchups.push_back({v, "scripted"});
        plan.rounds = 200;
        plan.repeats = 2;
        plan.write_variant_curves = true;
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return plan;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"self-comparison", "vs-baselines", "mcts-om", "convergence"};
}

std::vector<PresetCellResult> run_preset(const std::string& name, const PresetOptions& options) {
    PresetPlan plan = plan_for(name);

    std::vector<std::string> characters = character_preset_names();
    std::vector<std::string> cell_overrides;
    for (const auto& o : options.overrides) {
        if (o.rfind("character=", 0) == 0)
            characters = {o.substr(10)};
        else if (o.rfind("rounds=", 0) == 0)
            plan.rounds = std::stoi(o.substr(7));
        else if (o.rfind("repeats=", 0) == 0)
            plan.repeats = std::stoi(o.substr(8));
        else
            cell_overrides.push_back(o);
    }

    std::vector<PresetCellResult> results;
    uint64_t cell_index = 0;
    for (const auto& character : characters) {
        for (const auto& matchup : plan.matchups) {
            ExperimentConfig base;
            base.agents[0] = spec_from_label(matchup.p1);
            base.agents[1] = spec_from_label(matchup.p2);
            base.character = character;
            base.rounds = plan.rounds;
            base.repeats = plan.repeats;
            base.seed = Rng::derive(options.seed, cell_index);
            base.out_dir = options.out_dir + "/" + name + "/" + character + "/" + matchup.p1 +
                           "_vs_" + matchup.p2;
            if (options.budget_mode == "ms") {
                base.evolution.budget.mode = DecisionBudget::Mode::WallClockMs;
                base.evolution.budget.limit = 16;
                base.mcts.budget = base.evolution.budget;
            }

            std::string cfg_json = config_to_json(base);
            for (const auto& o : cell_overrides) apply_override(cfg_json, o);
            const ExperimentConfig cfg = config_from_json(cfg_json);

            SeriesResult series = run_series(cfg, options.threads);
            results.push_back({character, matchup.p1, matchup.p2, std::move(series)});
            ++cell_index;
        }
    }

    // Single writer for the cross-cell summary.
    const std::string dir = options.out_dir + "/" + name;
    fs::create_directories(dir);
    std::ostringstream csv;
    csv << "character,p1,p2,rounds,repeats,win_rate,ci95,mean_hp_diff\n";
    json summary = json::array();
    for (const auto& cell : results) {
        char line[256];
        std::snprintf(line, sizeof line, "%s,%s,%s,%d,%d,%.4f,%.4f,%.2f\n", cell.character.c_str(),
                      cell.p1.c_str(), cell.p2.c_str(), cell.series.rounds, cell.series.repeats,
                      cell.series.p1_win_rate, cell.series.ci95, cell.series.mean_hp_diff);
        csv << line;
        summary.push_back({{"character", cell.character},
                           {"p1", cell.p1},
                           {"p2", cell.p2},
                           {"win_rate", cell.series.p1_win_rate},
                           {"ci95", cell.series.ci95},
                           {"mean_hp_diff", cell.series.mean_hp_diff},
                           {"budget_violations", cell.series.budget_violations}});
    }
    std::ofstream(dir + "/summary.csv") << csv.str();
    std::ofstream(dir + "/summary.json") << summary.dump(2) << "\n";
    return results;
}

}  // namespace rheaom
