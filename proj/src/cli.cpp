#include "rheaom/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rheaom/harness.hpp"
#include "rheaom/presets.hpp"
#include "rheaom/svg.hpp"

namespace rheaom {

namespace fs = std::filesystem;

namespace {

struct CommonArgs {
    std::string config_path;
    uint64_t seed = 1;
    bool seed_set = false;
    std::string out_dir;
    std::vector<std::string> overrides;
    std::string budget_mode;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON experiment config");
    cmd->add_option("--seed", args.seed, "master seed")->each([&](const std::string&) {
        args.seed_set = true;
    });
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--set", args.overrides, "override a config key, key=value")
        ->take_all()
        ->allow_extra_args(false);
    cmd->add_option("--budget-mode", args.budget_mode, "decision budget mode")
        ->check(CLI::IsMember({"calls", "ms"}));
    cmd->add_option("--threads", args.threads, "worker cap (also RHEAOM_THREADS)");
}

ExperimentConfig build_config(const CommonArgs& args, const std::string& default_json) {
    std::string text = default_json;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw std::invalid_argument("cannot open config file: " + args.config_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    for (const auto& o : args.overrides) apply_override(text, o);
    ExperimentConfig cfg = config_from_json(text);
    if (args.seed_set) cfg.seed = args.seed;
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.budget_mode == "ms") {
        cfg.evolution.budget.mode = DecisionBudget::Mode::WallClockMs;
        cfg.evolution.budget.limit = 16;
        cfg.mcts.budget = cfg.evolution.budget;
    } else if (args.budget_mode == "calls") {
        cfg.evolution.budget.mode = DecisionBudget::Mode::ForwardCalls;
        cfg.mcts.budget.mode = DecisionBudget::Mode::ForwardCalls;
    }
    return cfg;
}

std::string default_play_json() {
    ExperimentConfig cfg;
    cfg.agents[0].kind = AgentKind::Rhea;
    cfg.agents[0].om = ModelKind::PG;
    cfg.agents[1].kind = AgentKind::Scripted;
    cfg.rounds = 1;
    cfg.repeats = 1;
    return config_to_json(cfg);
}

int cmd_play(const CommonArgs& args) {
    ExperimentConfig cfg = build_config(args, default_play_json());
    const Ruleset rules = make_ruleset(character_preset(cfg.character));
    auto p1 = make_agent(cfg.agents[0], rules, cfg.evolution, cfg.mcts, Rng::derive(cfg.seed, 100));
    auto p2 = make_agent(cfg.agents[1], rules, cfg.evolution, cfg.mcts, Rng::derive(cfg.seed, 101));

    RoundLog log;
    std::vector<DecisionTraceEntry> trace;
    const RoundResult res =
        run_round(rules, *p1, *p2, Rng::derive(cfg.seed, 0), cfg.delay, cfg.train, &log, &trace);

    std::cout << cfg.agents[0].label() << " vs " << cfg.agents[1].label() << " on "
              << cfg.character << "\n";
    for (const auto& e : log.entries)
        if (e.frame % 300 == 0)
            std::cout << "  frame " << e.frame << "  hp " << e.p1.hp << ":" << e.p2.hp
                      << "  pos " << e.p1.x << "/" << e.p2.x << "\n";
    const char* outcome = res.winner == RoundStatus::P1Win   ? "P1 wins"
                          : res.winner == RoundStatus::P2Win ? "P2 wins"
                                                             : "draw";
    std::cout << outcome << " after " << res.frames << " frames, hp diff " << res.hp_diff << "\n";
    for (int i = 0; i < 2; ++i)
        std::cout << "  p" << i + 1 << ": " << res.stats[i].decisions << " decisions, mean fwd calls "
                  << res.stats[i].mean_forward_calls() << ", mean generations "
                  << res.stats[i].mean_generations << "\n";
    if (!cfg.out_dir.empty()) {
        fs::create_directories(cfg.out_dir);
        std::ofstream(cfg.out_dir + "/round.jsonl") << log.to_jsonl();
        std::ofstream(cfg.out_dir + "/decisions.jsonl") << trace_to_jsonl(trace);
        std::cout << "wrote " << cfg.out_dir << "/round.jsonl and decisions.jsonl\n";
    }
    return 0;
}

int cmd_series(const CommonArgs& args) {
    if (args.config_path.empty()) throw std::invalid_argument("series requires --config");
    ExperimentConfig cfg = build_config(args, "");
    if (cfg.out_dir.empty()) cfg.out_dir = "out/series";
    const SeriesResult series = run_series(cfg, args.threads);
    std::cout << cfg.agents[0].label() << " vs " << cfg.agents[1].label() << ": win rate "
              << series.p1_win_rate << " +- " << series.ci95 << " over "
              << series.rounds * series.repeats << " rounds (" << series.elapsed_s << " s)\n"
              << "artifacts in " << cfg.out_dir << "\n";
    return 0;
}

int cmd_reproduce(const std::string& preset, const CommonArgs& args) {
    PresetOptions options;
    options.seed = args.seed;
    options.out_dir = args.out_dir.empty() ? "out" : args.out_dir;
    options.overrides = args.overrides;
    options.budget_mode = args.budget_mode;
    options.threads = args.threads;
    const auto cells = run_preset(preset, options);
    for (const auto& cell : cells)
        std::cout << cell.character << "  " << cell.p1 << " vs " << cell.p2 << ": "
                  << cell.series.p1_win_rate << " +- " << cell.series.ci95 << "\n";
    std::cout << "summary in " << options.out_dir << "/" << preset << "/summary.csv\n";
    return 0;
}

int cmd_plot(const std::string& input, std::string output, const std::string& title) {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("cannot open curves file: " + input);
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("empty curves file: " + input);
    std::vector<std::string> names;
    std::stringstream hs(header);
    std::string col;
    while (std::getline(hs, col, ',')) names.push_back(col);
    if (names.size() < 2) throw std::invalid_argument("curves file needs at least two columns");

    std::vector<std::pair<std::string, std::vector<double>>> series;
    for (size_t i = 1; i < names.size(); ++i) series.push_back({names[i], {}});
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        size_t idx = 0;
        while (std::getline(ls, cell, ',')) {
            if (idx >= 1 && idx < names.size()) series[idx - 1].second.push_back(std::stod(cell));
            ++idx;
        }
    }
    if (output.empty()) output = input + ".svg";
    std::ofstream(output) << svg_line_plot(title.empty() ? input : title, names[0], series);
    std::cout << "wrote " << output << "\n";
    return 0;
}

int cmd_inspect(const std::string& path) {
    const LinearSoftmaxModel model = load_model(path);
    double wmin = 0, wmax = 0, wnorm = 0;
    if (!model.weights.empty()) {
        wmin = wmax = model.weights[0];
        for (double v : model.weights) {
            wmin = std::min(wmin, v);
            wmax = std::max(wmax, v);
            wnorm += v * v;
        }
    }
    std::cout << "kind: " << model_kind_name(model.kind) << "\n"
              << "features: " << model.feature_dim << "\n"
              << "actions: " << model.action_count << "\n"
              << "adam steps: " << model.adam_t << "\n"
              << "weights: min " << wmin << ", max " << wmax << ", l2 " << std::sqrt(wnorm) << "\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Rolling-horizon fighting agents with learned opponent models"};
    app.require_subcommand(1);

    CommonArgs play_args, series_args, repro_args;
    auto* play = app.add_subcommand("play", "run one verbose round");
    add_common(play, play_args);

    auto* series = app.add_subcommand("series", "run an experiment config");
    add_common(series, series_args);

    auto* repro = app.add_subcommand("reproduce", "run a named reproduction preset");
    std::string preset;
    repro->add_option("preset", preset, "one of: self-comparison, vs-baselines, mcts-om, convergence")
        ->required();
    add_common(repro, repro_args);

    auto* plot = app.add_subcommand("plot", "render a curves.csv to SVG");
    std::string plot_in, plot_out, plot_title;
    plot->add_option("input", plot_in, "curves.csv path")->required();
    plot->add_option("--out", plot_out, "output SVG path");
    plot->add_option("--title", plot_title, "plot title");

    auto* inspect = app.add_subcommand("inspect", "print a model snapshot summary");
    std::string model_path;
    inspect->add_option("model", model_path, "model snapshot path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::endl;
        return 2;
    }

    try {
        if (play->parsed()) return cmd_play(play_args);
        if (series->parsed()) return cmd_series(series_args);
        if (repro->parsed()) {
            const auto names = preset_names();
            if (std::find(names.begin(), names.end(), preset) == names.end()) {
                std::cerr << "unknown preset: " << preset << "\nknown presets:";
                for (const auto& n : names) std::cerr << ' ' << n;
                std::cerr << std::endl;
                return 2;
            }
            return cmd_reproduce(preset, repro_args);
        }
        if (plot->parsed()) return cmd_plot(plot_in, plot_out, plot_title);
        if (inspect->parsed()) return cmd_inspect(model_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 2;
}

}  // namespace rheaom
