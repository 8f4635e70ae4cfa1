#pragma once

#include <vector>

#include "detree/dataset.hpp"
#include "detree/tree.hpp"

namespace detree {

// Real-valued DE candidate encoding one tree. Layout: feature genes
// a-hat[1..SB] in [0, P+1) followed by threshold genes b-hat[1..SB] in
// [0, 1), SB = 2^D - 1.
struct Individual {
    std::vector<double> genes;

    int branch_count() const { return static_cast<int>(genes.size() / 2); }
    double feature_gene(int t) const { return genes[t - 1]; }
    double threshold_gene(int t) const { return genes[branch_count() + t - 1]; }
};

int depth_for_gene_count(std::size_t gene_count);

// Box repair after mutation/crossover: genes are clamped into their
// half-open ranges, the upper bound replaced by the largest double below it.
Individual clamp(Individual ind, int features);

// Discrete decoding: a_t = floor(a-hat_t); for active nodes the threshold
// gene selects an index into the feature's threshold set, so every vector in
// the box maps to a valid tree and all duplicate splits between adjacent
// samples collapse onto one candidate.
TreeParams decode(const Individual& ind, const ThresholdSets& th, int features);

// Inverse mapping used for warm-starts. Genes are placed at decode-cell
// midpoints; thresholds not exactly in the set snap to the nearest entry.
Individual encode(const TreeParams& tree, const ThresholdSets& th);

}  // namespace detree
