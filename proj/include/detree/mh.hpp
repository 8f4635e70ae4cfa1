#pragma once

#include <span>
#include <vector>

#include "detree/de.hpp"
#include "detree/fitness.hpp"
#include "detree/tree.hpp"

namespace detree {

struct WarmStartPolicy {
    bool cart_in_de = true;  // per-solve CART solution added to the DE population
    bool de_warm = true;     // one full-depth DEOCT solution harvested per node
    bool cart_warm = true;   // global CART solution harvested per node
};

struct MhConfig {
    int depth = 2;      // D
    int mh_depth = 2;   // D_MH, 1..D
    EvalConfig oct;
    DeConfig de;
    WarmStartPolicy warm_start;
};

// D_{t,MH} = min(D_MH, D - D_t) for a node at depth D_t.
int effective_depth(int mh_depth, int depth, int node_depth);

// Subtree of each pool tree with the same shape and location as the
// moving-horizon subtree at node t with depth d.
std::vector<TreeParams> harvest_warm_subtrees(std::span<const TreeParams> pools,
                                              int t, int d);

struct MhNodeRecord {
    int node = 0;
    int subset_size = 0;
    int effective_depth = 0;
    enum class Action { de_solve, exhaustive_depth1, artificial } action =
        Action::artificial;
    double seconds = 0.0;
};

struct MhReport {
    std::vector<MhNodeRecord> nodes;
    double warm_start_seconds = 0.0;  // global pool construction
    double total_seconds = 0.0;       // includes warm-start time
    long long elitism_violations = 0; // non-increasing-history breaches across inner solves
};

struct MhResult {
    TreeParams tree;
    MhReport report;
};

// Moving-horizon DEOCT: visits branch nodes in index order, optimizes the
// effective-depth subtree on the samples routed to each node, and commits
// only the subtree's first split.
MhResult run_mh_deoct(const Dataset& ds, const ThresholdSets& th, const MhConfig& cfg);

}  // namespace detree
