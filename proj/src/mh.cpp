#include "detree/mh.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "detree/greedy.hpp"
#include "detree/rng.hpp"

namespace detree {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

long long count_history_violations(std::span<const double> history) {
    long long violations = 0;
    for (std::size_t i = 1; i < history.size(); ++i)
        if (history[i] > history[i - 1]) ++violations;
    return violations;
}

bool has_multiple_labels(const Dataset& ds) {
    for (int i = 1; i < ds.n; ++i)
        if (ds.y[i] != ds.y[0]) return true;
    return false;
}

}  // namespace

int effective_depth(int mh_depth, int depth, int node_depth) {
    if (node_depth < 0 || node_depth >= depth)
        throw std::invalid_argument("node depth must be in [0, D)");
    if (mh_depth < 1) throw std::invalid_argument("moving-horizon depth must be >= 1");
    return std::min(mh_depth, depth - node_depth);
}

std::vector<TreeParams> harvest_warm_subtrees(std::span<const TreeParams> pools,
                                              int t, int d) {
    std::vector<TreeParams> subtrees;
    subtrees.reserve(pools.size());
    for (const auto& pool : pools) subtrees.push_back(subtree_at(pool, t, d));
    return subtrees;
}

MhResult run_mh_deoct(const Dataset& ds, const ThresholdSets& th, const MhConfig& cfg) {
    if (ds.n == 0) throw std::invalid_argument("run_mh_deoct on an empty dataset");
    if (cfg.mh_depth < 1 || cfg.mh_depth > cfg.depth)
        throw std::invalid_argument("moving-horizon depth must be in [1, D]");

    const auto t_total = Clock::now();
    MhResult result;
    result.tree = TreeParams::artificial(cfg.depth);

    // Global warm-start pools, computed once; their time is part of the run.
    // A horizon of 1 never consults them (every node takes the exhaustive
    // path), so they are skipped.
    std::vector<TreeParams> pools;
    if (cfg.mh_depth > 1) {
        const auto t_warm = Clock::now();
        if (cfg.warm_start.cart_warm)
            pools.push_back(cart_train(ds, cfg.depth, cfg.oct.n_min, Impurity::gini));
        if (cfg.warm_start.de_warm) {
            std::vector<TreeParams> de_warm;
            if (cfg.warm_start.cart_in_de)
                de_warm.push_back(cart_train(ds, cfg.depth, cfg.oct.n_min, Impurity::gini));
            DeConfig pool_cfg = cfg.de;
            pool_cfg.seed = derive_seed(cfg.de.seed, "mh-pool");
            DeResult full = run_deoct(ds, th, cfg.depth, cfg.oct, pool_cfg, de_warm);
            result.report.elitism_violations += count_history_violations(full.history);
            pools.push_back(std::move(full.best_tree));
        }
        result.report.warm_start_seconds = seconds_since(t_warm);
    }

    const int sb = result.tree.branch_count();
    for (int t = 1; t <= sb; ++t) {
        const auto t_node = Clock::now();
        MhNodeRecord record;
        record.node = t;

        const Dataset subset = subset_by_path(ds, result.tree, t);
        record.subset_size = subset.n;

        if (subset.n > cfg.oct.n_min && has_multiple_labels(subset)) {
            const int d_eff = effective_depth(cfg.mh_depth, cfg.depth, node_depth(t));
            record.effective_depth = d_eff;
            if (d_eff != 1) {
                std::vector<TreeParams> warm = harvest_warm_subtrees(pools, t, d_eff);
                if (cfg.warm_start.cart_in_de)
                    warm.push_back(cart_train(subset, d_eff, cfg.oct.n_min, Impurity::gini));
                DeConfig node_cfg = cfg.de;
                node_cfg.seed = derive_seed(cfg.de.seed, "mh-node", static_cast<std::uint64_t>(t));
                DeResult solved = run_deoct(subset, th, d_eff, cfg.oct, node_cfg, warm);
                result.report.elitism_violations += count_history_violations(solved.history);
                graft_first_node(result.tree, t, solved.best_tree);
                record.action = MhNodeRecord::Action::de_solve;
            } else {
                // Exhaustive single-split solve under the same local
                // objective the DE path optimizes; at alpha = 0, n_min = 1
                // this is exactly the misclassification split.
                const TreeParams stub =
                    exact_depth1(subset, th, cfg.oct.alpha, cfg.oct.n_min);
                graft_first_node(result.tree, t, stub);
                record.action = MhNodeRecord::Action::exhaustive_depth1;
            }
        } else {
            record.action = MhNodeRecord::Action::artificial;
        }
        record.seconds = seconds_since(t_node);
        result.report.nodes.push_back(record);
    }

    result.tree = assign_leaf_classes(std::move(result.tree), ds);
    result.report.total_seconds = seconds_since(t_total);
    return result;
}

}  // namespace detree
