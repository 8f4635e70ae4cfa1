#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "detree/codec.hpp"
#include "detree/fitness.hpp"
#include "detree/rng.hpp"
#include "detree/tree.hpp"

namespace detree {

enum class DeMode { normal, long_run };

struct DeConfig {
    int population = 100;      // N
    int generations = 600;     // G
    double crossover_rate = 0.1;
    std::uint64_t seed = 0;
    DeMode mode = DeMode::normal;

    static DeConfig normal(std::uint64_t seed) { return DeConfig{100, 600, 0.1, seed, DeMode::normal}; }
    static DeConfig long_run(std::uint64_t seed) { return DeConfig{200, 4000, 0.1, seed, DeMode::long_run}; }
};

struct Population {
    std::vector<Individual> members;
    std::vector<double> fitnesses;
    int best_index = -1;
    int generation = 0;
};

// First |warm| members are the encoded warm-start trees; the rest are
// sampled uniformly inside the gene box from the "init" stream.
Population init_population(std::span<const TreeParams> warm, const DeConfig& cfg,
                           const ThresholdSets& th, int depth, int features);

// v = s_best + M * (s_r1 - s_r2), clamped. The partner indices are drawn
// from the stream; r1 != r2, either may equal r.
Individual mutate(const Population& pop, int r, double m, int features,
                  RngStream& partners);

// Binomial crossover: gene q comes from the mutant iff rand <= cr or q is
// the forced index. One coin is drawn per gene plus one index draw.
Individual crossover(const Individual& parent, const Individual& mutant,
                     double cr, RngStream& stream);

// Trial replaces the parent on ties.
inline bool select_trial(double parent_fitness, double trial_fitness) {
    return trial_fitness <= parent_fitness;
}

struct DeResult {
    TreeParams best_tree;        // leaf classes assigned on the training set
    double best_fitness = 0.0;
    Individual best_individual;
    std::vector<double> history; // best fitness per generation, entry 0 = initial
    Population final_population;
};

// Population-based DEOCT: all N trials of a generation are built from the
// previous generation's best, evaluated in one batched call, then selected.
DeResult run_deoct(const Dataset& ds, const ThresholdSets& th, int depth,
                   const EvalConfig& oct, const DeConfig& cfg,
                   std::span<const TreeParams> warm);

}  // namespace detree
