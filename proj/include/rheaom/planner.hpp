#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <vector>

#include "rheaom/engine.hpp"
#include "rheaom/opponent_model.hpp"
#include "rheaom/rng.hpp"

namespace rheaom {

struct Individual {
    std::vector<int> genes;
    std::optional<double> fitness;

    double sort_key() const { return fitness.value_or(-std::numeric_limits<double>::infinity()); }
};

struct Population {
    std::vector<Individual> members;

    int size() const { return static_cast<int>(members.size()); }
};

struct DecisionBudget {
    enum class Mode { ForwardCalls, WallClockMs };
    Mode mode = Mode::ForwardCalls;
    int limit = 280;

    void validate() const;
};

// Per-decision accounting shared by every planner; one unit equals one
// gene-level forward advance.
class BudgetTracker {
public:
    explicit BudgetTracker(const DecisionBudget& budget)
        : budget_(budget), start_(std::chrono::steady_clock::now()) {}

    void charge() { ++used_; }
    bool can_spend(int calls) const {
        if (budget_.mode == DecisionBudget::Mode::ForwardCalls)
            return used_ + calls <= budget_.limit;
        return elapsed_ms() < budget_.limit;
    }
    int used() const { return used_; }
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    DecisionBudget budget_;
    int used_ = 0;
    std::chrono::steady_clock::time_point start_;
};

struct EvolutionConfig {
    int n = 7;
    int k = 1;
    int l = 4;
    double p_m = 0.85;
    double lambda = 0.5;
    DecisionBudget budget;
    bool shift_buffer = false;

    void validate() const;
};

// Round outcome or hp lead, in [-1, 1].
double score_fitness(const GameState& state, Player perspective);

// 1 - (1/nl) * sum_j count_j(gene_j), counting position-wise occurrences over
// the whole population; ranges over [0, 1 - 1/n].
double diversity(const Population& population, int member_index);

// Rolls out every still-unevaluated member, charging one budget unit per gene
// advance. Members the remaining budget cannot cover keep their old fitness
// (unset sorts as -infinity). With `force` the budget gate is bypassed, which
// the planner uses for the mandatory initial evaluation.
void evaluate_population(Population& population, const Ruleset& rules, const GameState& state,
                         Player self, OpponentModel& om, double lambda, BudgetTracker& tracker,
                         Rng& rng, bool force = false);

// Keeps the top k members, fills the rest with uniform-crossover offspring of
// one elite and one non-elite parent; each offspring mutates one uniformly
// chosen gene with probability p_m. Offspring fitness is unset.
Population evolve_generation(const Population& population, const EvolutionConfig& cfg,
                             int action_count, Rng& rng);

void sort_population(Population& population);

struct DecisionStats {
    int generations = 0;
    int forward_calls = 0;
    double best_fitness = 0.0;
    int chosen_action = 0;
    std::vector<double> generation_best;  // best fitness after each evaluation pass
};

class RheaPlanner {
public:
    // Config validation happens at config-load time; the planner itself also
    // copes with degenerate budgets (the initial evaluation is always run).
    explicit RheaPlanner(const EvolutionConfig& cfg, uint64_t seed = 0) : cfg_(cfg), rng_(seed) {}

    void reseed(uint64_t seed) { rng_.reseed(seed); }
    void begin_round() { prev_best_.reset(); }

    // Runs init/evaluate/sort and evolves while budget remains; returns the
    // first gene of the best sequence, repaired to a legal action.
    int plan(const Ruleset& rules, const GameState& state, Player self, OpponentModel& om);

    const DecisionStats& last_stats() const { return stats_; }
    const EvolutionConfig& config() const { return cfg_; }

private:
    EvolutionConfig cfg_;
    Rng rng_;
    std::optional<std::vector<int>> prev_best_;
    DecisionStats stats_;
};

}  // namespace rheaom
