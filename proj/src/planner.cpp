#include "rheaom/planner.hpp"

#include <algorithm>
#include <stdexcept>

namespace rheaom {

void DecisionBudget::validate() const {
    if (limit <= 0) throw std::invalid_argument("budget.limit must be positive");
}

void EvolutionConfig::validate() const {
    if (n < 2) throw std::invalid_argument("evolution.n must be >= 2");
    if (k < 1 || k >= n) throw std::invalid_argument("evolution.k must satisfy 1 <= k < n");
    if (l < 1) throw std::invalid_argument("evolution.l must be >= 1");
    if (p_m <= 0 || p_m >= 1) throw std::invalid_argument("evolution.p_m must be in (0, 1)");
    if (lambda < 0 || lambda >= 1) throw std::invalid_argument("evolution.lambda must be in [0, 1)");
    budget.validate();
}

double score_fitness(const GameState& state, Player perspective) {
    const RoundStatus status = round_status(state);
    if (status == RoundStatus::P1Win) return perspective == Player::P1 ? 1.0 : -1.0;
    if (status == RoundStatus::P2Win) return perspective == Player::P2 ? 1.0 : -1.0;
    const FighterState& self = state.fighter(perspective);
    const FighterState& opp = state.fighter(other(perspective));
    return static_cast<double>(self.hp - opp.hp) / state.max_hp;
}

double diversity(const Population& population, int member_index) {
    const auto& members = population.members;
    const auto& genes = members[static_cast<size_t>(member_index)].genes;
    const int n = population.size();
    const int l = static_cast<int>(genes.size());
    int total = 0;
    for (int j = 0; j < l; ++j) {
        const int gene = genes[static_cast<size_t>(j)];
        for (const auto& m : members)
            if (m.genes[static_cast<size_t>(j)] == gene) ++total;
    }
    return 1.0 - static_cast<double>(total) / (static_cast<double>(n) * l);
}

namespace {

// One full sequence rollout; the opponent side comes from the model, illegal
// self genes are repaired with a uniformly drawn legal action for this rollout
// only. Charges one budget unit per gene advance.
double rollout_score(const std::vector<int>& genes, const Ruleset& rules, const GameState& start,
                     Player self, OpponentModel& om, BudgetTracker& tracker, Rng& rng) {
    GameState s = start;
    for (int gene : genes) {
        if (round_status(s) != RoundStatus::Ongoing) break;
        int a_self = gene;
        const FighterState& self_fighter = s.fighter(self);
        if (self_fighter.idle() && !action_legal(rules, self_fighter, gene)) {
            const ActionSet legal = legal_actions(rules, s, self);
            a_self = legal.ids[rng.uniform_int(static_cast<uint32_t>(legal.count))];
        }
        int a_opp = rules.character.neutral_action;
        if (s.fighter(other(self)).idle()) {
            const FeatureArray features = extract_features(rules, s, other(self));
            a_opp = om.predict(features, legal_actions(rules, s, other(self)));
        }
        tracker.charge();
        const int a1 = self == Player::P1 ? a_self : a_opp;
        const int a2 = self == Player::P1 ? a_opp : a_self;
        s = advance_gene(rules, s, a1, a2);
    }
    return score_fitness(s, self);
}

}  // namespace

void evaluate_population(Population& population, const Ruleset& rules, const GameState& state,
                         Player self, OpponentModel& om, double lambda, BudgetTracker& tracker,
                         Rng& rng, bool force) {
    for (int i = 0; i < population.size(); ++i) {
        Individual& ind = population.members[static_cast<size_t>(i)];
        if (ind.fitness.has_value()) continue;
        const int genes = static_cast<int>(ind.genes.size());
        if (!force && !tracker.can_spend(genes)) continue;
        const double score = rollout_score(ind.genes, rules, state, self, om, tracker, rng);
        ind.fitness = (1.0 - lambda) * score + lambda * diversity(population, i);
    }
}

void sort_population(Population& population) {
    std::stable_sort(population.members.begin(), population.members.end(),
                     [](const Individual& a, const Individual& b) { return a.sort_key() > b.sort_key(); });
}

Population evolve_generation(const Population& population, const EvolutionConfig& cfg,
                             int action_count, Rng& rng) {
    Population next;
    next.members.reserve(static_cast<size_t>(cfg.n));
    for (int i = 0; i < cfg.k; ++i) next.members.push_back(population.members[static_cast<size_t>(i)]);
    const int rest = cfg.n - cfg.k;
    for (int child = 0; child < rest; ++child) {
        const Individual& p1 =
            population.members[rng.uniform_int(static_cast<uint32_t>(cfg.k))];
        const Individual& p2 =
            population.members[static_cast<size_t>(cfg.k) +
                               rng.uniform_int(static_cast<uint32_t>(rest))];
        Individual offspring;
        offspring.genes.resize(p1.genes.size());
        for (size_t j = 0; j < offspring.genes.size(); ++j)
            offspring.genes[j] = rng.uniform_int(2) == 0 ? p1.genes[j] : p2.genes[j];
        if (rng.uniform01() < cfg.p_m) {
            const auto pos = rng.uniform_int(static_cast<uint32_t>(offspring.genes.size()));
            offspring.genes[pos] = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(action_count)));
        }
        next.members.push_back(std::move(offspring));
    }
    return next;
}

int RheaPlanner::plan(const Ruleset& rules, const GameState& state, Player self,
                      OpponentModel& om) {
    const int action_count = rules.action_count();
    const ActionSet legal = legal_actions(rules, state, self);

    Population pop;
    pop.members.resize(static_cast<size_t>(cfg_.n));
    int first = 0;
    if (cfg_.shift_buffer && prev_best_.has_value()) {
        Individual seeded;
        seeded.genes.assign(prev_best_->begin() + 1, prev_best_->end());
        seeded.genes.push_back(static_cast<int>(rng_.uniform_int(static_cast<uint32_t>(action_count))));
        pop.members[0] = std::move(seeded);
        first = 1;
    }
    for (int i = first; i < cfg_.n; ++i) {
        Individual& ind = pop.members[static_cast<size_t>(i)];
        ind.genes.resize(static_cast<size_t>(cfg_.l));
        ind.genes[0] = legal.ids[rng_.uniform_int(static_cast<uint32_t>(legal.count))];
        for (int j = 1; j < cfg_.l; ++j)
            ind.genes[static_cast<size_t>(j)] =
                static_cast<int>(rng_.uniform_int(static_cast<uint32_t>(action_count)));
    }

    BudgetTracker tracker(cfg_.budget);
    stats_ = DecisionStats{};
    evaluate_population(pop, rules, state, self, om, cfg_.lambda, tracker, rng_, /*force=*/true);
    sort_population(pop);
    stats_.generation_best.push_back(pop.members.front().sort_key());

    while (tracker.can_spend(cfg_.l)) {
        pop = evolve_generation(pop, cfg_, action_count, rng_);
        evaluate_population(pop, rules, state, self, om, cfg_.lambda, tracker, rng_);
        sort_population(pop);
        stats_.generation_best.push_back(pop.members.front().sort_key());
        ++stats_.generations;
    }

    const Individual& best = pop.members.front();
    int action = best.genes.front();
    if (!action_legal(rules, state.fighter(self), action))
        action = legal.ids[rng_.uniform_int(static_cast<uint32_t>(legal.count))];

    if (cfg_.shift_buffer) prev_best_ = best.genes;
    stats_.forward_calls = tracker.used();
    stats_.best_fitness = best.sort_key();
    stats_.chosen_action = action;
    return action;
}

}  // namespace rheaom
