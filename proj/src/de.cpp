#include "detree/de.hpp"

#include <algorithm>
#include <stdexcept>

namespace detree {

namespace {

int argmin_first(std::span<const double> values) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(values.size()); ++i)
        if (values[i] < values[best]) best = i;
    return best;
}

}  // namespace

Population init_population(std::span<const TreeParams> warm, const DeConfig& cfg,
                           const ThresholdSets& th, int depth, int features) {
    if (cfg.population < 3) throw std::invalid_argument("population size must be >= 3");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0)
        throw std::invalid_argument("crossover rate must be in [0,1]");
    if (static_cast<int>(warm.size()) > cfg.population)
        throw std::invalid_argument("more warm starts than population slots");

    const int sb = (1 << depth) - 1;
    Population pop;
    pop.members.reserve(cfg.population);
    for (const auto& tree : warm) {
        if (tree.depth != depth)
            throw std::invalid_argument("warm-start tree depth mismatch");
        pop.members.push_back(encode(tree, th));
    }

    RngStream init = derive_stream(cfg.seed, "init");
    const double a_span = static_cast<double>(features) + 1.0;
    for (int r = static_cast<int>(warm.size()); r < cfg.population; ++r) {
        Individual ind;
        ind.genes.resize(static_cast<std::size_t>(2 * sb));
        for (int q = 0; q < sb; ++q) ind.genes[q] = init.next_unit() * a_span;
        for (int q = sb; q < 2 * sb; ++q) ind.genes[q] = init.next_unit();
        pop.members.push_back(clamp(std::move(ind), features));
    }
    return pop;
}

Individual mutate(const Population& pop, int r, double m, int features,
                  RngStream& partners) {
    (void)r;
    const int n = static_cast<int>(pop.members.size());
    if (n < 3) throw std::invalid_argument("mutation needs at least 3 members");
    const int r1 = static_cast<int>(partners.next_below(n));
    int r2 = static_cast<int>(partners.next_below(n));
    while (r2 == r1) r2 = static_cast<int>(partners.next_below(n));

    const Individual& best = pop.members[pop.best_index];
    const Individual& s1 = pop.members[r1];
    const Individual& s2 = pop.members[r2];
    Individual v;
    v.genes.resize(best.genes.size());
    for (std::size_t q = 0; q < v.genes.size(); ++q)
        v.genes[q] = best.genes[q] + m * (s1.genes[q] - s2.genes[q]);
    return clamp(std::move(v), features);
}

Individual crossover(const Individual& parent, const Individual& mutant,
                     double cr, RngStream& stream) {
    if (parent.genes.size() != mutant.genes.size())
        throw std::invalid_argument("crossover requires equal gene counts");
    const std::size_t dims = parent.genes.size();
    const std::size_t q_rand = stream.next_below(dims);
    Individual trial;
    trial.genes.resize(dims);
    for (std::size_t q = 0; q < dims; ++q) {
        const bool cross = stream.next_unit() <= cr || q == q_rand;
        trial.genes[q] = cross ? mutant.genes[q] : parent.genes[q];
    }
    return trial;
}

DeResult run_deoct(const Dataset& ds, const ThresholdSets& th, int depth,
                   const EvalConfig& oct, const DeConfig& cfg,
                   std::span<const TreeParams> warm) {
    if (ds.n == 0) throw std::invalid_argument("run_deoct on an empty dataset");

    EvalConfig eval = oct;
    eval.depth = depth;

    Population pop = init_population(warm, cfg, th, depth, ds.p);
    pop.fitnesses = evaluate_population(pop.members, ds, th, eval);
    pop.best_index = argmin_first(pop.fitnesses);

    DeResult result;
    result.history.reserve(cfg.generations + 1);
    result.history.push_back(pop.fitnesses[pop.best_index]);

    RngStream m_stream = derive_stream(cfg.seed, "mutation-factor");
    RngStream partner_stream = derive_stream(cfg.seed, "partners");
    RngStream cross_stream = derive_stream(cfg.seed, "crossover");

    const int n = cfg.population;
    std::vector<Individual> trials(n);
    for (int g = 1; g <= cfg.generations; ++g) {
        for (int r = 0; r < n; ++r) {
            const double m = m_stream.next_unit();
            Individual mutant = mutate(pop, r, m, ds.p, partner_stream);
            trials[r] = crossover(pop.members[r], mutant, cfg.crossover_rate, cross_stream);
        }
        const std::vector<double> trial_fitness = evaluate_population(trials, ds, th, eval);
        for (int r = 0; r < n; ++r) {
            if (select_trial(pop.fitnesses[r], trial_fitness[r])) {
                pop.members[r] = trials[r];
                pop.fitnesses[r] = trial_fitness[r];
            }
        }
        pop.best_index = argmin_first(pop.fitnesses);
        pop.generation = g;
        result.history.push_back(pop.fitnesses[pop.best_index]);
    }

    result.best_individual = pop.members[pop.best_index];
    result.best_fitness = pop.fitnesses[pop.best_index];
    result.best_tree =
        assign_leaf_classes(decode(result.best_individual, th, ds.p), ds);
    result.final_population = std::move(pop);
    return result;
}

}  // namespace detree
