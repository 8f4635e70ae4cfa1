#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "detree/codec.hpp"
#include "detree/dataset.hpp"
#include "detree/tree.hpp"

namespace detree {

struct EvalConfig {
    int n_stride = 32;   // samples per parallel unit
    double alpha = 0.0;
    int n_min = 1;
    int depth = 2;
    int workers = 0;     // 0 = hardware concurrency

    int resolved_workers() const;
};

// Count of samples of class k inside leaf l of tree r, built in one batched
// pass. Integer accumulation only, so the result is independent of stride
// size and worker count.
struct ClassCountTensor {
    int trees = 0;
    int leaves = 0;
    int classes = 0;
    std::vector<std::int32_t> z;

    std::int32_t at(int r, int l, int k) const {
        return z[(static_cast<std::size_t>(r) * leaves + l) * classes + k];
    }
    std::span<const std::int32_t> slice(int r) const {
        const std::size_t len = static_cast<std::size_t>(leaves) * classes;
        return {z.data() + static_cast<std::size_t>(r) * len, len};
    }
};

ClassCountTensor class_count_tensor(std::span<const TreeParams> trees,
                                    const Dataset& ds, const EvalConfig& cfg);

// Objective value of one tree from its tensor slice: n minus the matched
// majority counts, plus the split penalty and small-leaf violations.
double fitness_from_counts(const ClassCountTensor& counts, int r,
                           const TreeParams& tree, const EvalConfig& cfg);

std::vector<double> evaluate_trees(std::span<const TreeParams> trees,
                                   const Dataset& ds, const EvalConfig& cfg);

// Decodes the whole population once, routes every stride once for all trees,
// and maps the objective over the resulting count slices.
std::vector<double> evaluate_population(std::span<const Individual> members,
                                        const Dataset& ds, const ThresholdSets& th,
                                        const EvalConfig& cfg);

}  // namespace detree
