#include "detree/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace detree {

namespace {

struct ClassCounts {
    std::vector<long long> counts;
    long long total = 0;

    explicit ClassCounts(int k) : counts(k, 0) {}

    void add(int cls) {
        if (cls >= 1) ++counts[cls - 1];
        ++total;
    }
    void remove(int cls) {
        if (cls >= 1) --counts[cls - 1];
        --total;
    }
    long long max_count() const {
        long long best = 0;
        for (long long c : counts) best = std::max(best, c);
        return best;
    }
    long long misclassified() const { return total - max_count(); }
    double gini() const {
        if (total == 0) return 0.0;
        double sum_sq = 0.0;
        for (long long c : counts)
            sum_sq += static_cast<double>(c) * static_cast<double>(c);
        const double n = static_cast<double>(total);
        return 1.0 - sum_sq / (n * n);
    }
};

// Walks the candidate thresholds of one feature in ascending order, keeping
// the class counts of both sides current, and reports each candidate to the
// callback as (threshold, left, right).
template <typename Fn>
void sweep_thresholds(const Dataset& ds, std::span<const int> indices, int p,
                      std::span<const double> candidates, Fn&& on_candidate) {
    std::vector<int> order(indices.begin(), indices.end());
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return ds.at(lhs, p) < ds.at(rhs, p);
    });

    ClassCounts left(ds.k), right(ds.k);
    for (int i : order) right.add(ds.y[i]);

    std::size_t ptr = 0;
    for (double beta : candidates) {
        while (ptr < order.size() && ds.at(order[ptr], p) < beta) {
            left.add(ds.y[order[ptr]]);
            right.remove(ds.y[order[ptr]]);
            ++ptr;
        }
        on_candidate(beta, left, right);
    }
}

int violation(long long n_t, int n_min) {
    return (n_t > 0 && n_t < n_min) ? 1 : 0;
}

// Best single split of a subset under the full objective: misclassification
// plus alpha for the split itself plus leaf violations. No-split is the
// baseline; a split must strictly improve on it.
struct Depth1Solution {
    bool has_split = false;
    int feature = 0;
    double threshold = 0.0;
    double cost = 0.0;
};

Depth1Solution depth1_exact(const Dataset& ds, std::span<const int> indices,
                            const ThresholdSets& th, double alpha, int n_min) {
    ClassCounts all(ds.k);
    for (int i : indices) all.add(ds.y[i]);

    Depth1Solution best;
    best.cost = static_cast<double>(all.misclassified()) + violation(all.total, n_min);

    for (int p = 0; p < ds.p; ++p) {
        sweep_thresholds(ds, indices, p, th.beta[p],
                         [&](double beta, const ClassCounts& left, const ClassCounts& right) {
                             const double cost =
                                 static_cast<double>(left.misclassified() + right.misclassified()) +
                                 alpha + violation(left.total, n_min) + violation(right.total, n_min);
                             if (cost < best.cost) {
                                 best.cost = cost;
                                 best.has_split = true;
                                 best.feature = p + 1;
                                 best.threshold = beta;
                             }
                         });
    }
    return best;
}

}  // namespace

std::optional<SplitCandidate> best_split_misclass(const Dataset& ds, const ThresholdSets& th) {
    if (ds.n == 0) throw DataError("best_split_misclass on an empty dataset");
    std::vector<int> indices(ds.n);
    std::iota(indices.begin(), indices.end(), 0);

    ClassCounts all(ds.k);
    for (int i : indices) all.add(ds.y[i]);
    const long long majority_loss = all.misclassified();

    std::optional<SplitCandidate> best;
    for (int p = 0; p < ds.p; ++p) {
        sweep_thresholds(ds, indices, p, th.beta[p],
                         [&](double beta, const ClassCounts& left, const ClassCounts& right) {
                             const long long loss = left.misclassified() + right.misclassified();
                             if (!best || loss < best->loss)
                                 best = SplitCandidate{p + 1, beta, loss};
                         });
    }
    if (!best || best->loss >= majority_loss) return std::nullopt;
    return best;
}

namespace {

struct CartSplit {
    bool found = false;
    int feature = 0;
    double threshold = 0.0;
};

CartSplit best_cart_split(const Dataset& ds, std::span<const int> indices, Impurity impurity) {
    ClassCounts all(ds.k);
    for (int i : indices) all.add(ds.y[i]);
    const double n = static_cast<double>(all.total);
    const double parent = impurity == Impurity::gini
                              ? all.gini() * n
                              : static_cast<double>(all.misclassified());

    CartSplit best;
    double best_score = parent;
    std::vector<double> values;
    std::vector<double> midpoints;
    for (int p = 0; p < ds.p; ++p) {
        values.clear();
        for (int i : indices) values.push_back(ds.at(i, p));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        if (values.size() < 2) continue;
        midpoints.clear();
        for (std::size_t v = 0; v + 1 < values.size(); ++v)
            midpoints.push_back(0.5 * (values[v] + values[v + 1]));

        sweep_thresholds(ds, indices, p, midpoints,
                         [&](double beta, const ClassCounts& left, const ClassCounts& right) {
                             double score;
                             if (impurity == Impurity::gini) {
                                 score = left.gini() * static_cast<double>(left.total) +
                                         right.gini() * static_cast<double>(right.total);
                             } else {
                                 score = static_cast<double>(left.misclassified() +
                                                             right.misclassified());
                             }
                             if (score < best_score - 1e-12) {
                                 best_score = score;
                                 best = CartSplit{true, p + 1, beta};
                             }
                         });
    }
    return best;
}

void cart_build(const Dataset& ds, std::span<const int> indices, TreeParams& tree,
                int t, int level, int n_min, Impurity impurity) {
    if (level >= tree.depth) return;
    if (static_cast<int>(indices.size()) <= n_min) return;

    bool pure = true;
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (ds.y[indices[i]] != ds.y[indices[0]]) {
            pure = false;
            break;
        }
    if (pure) return;

    const CartSplit split = best_cart_split(ds, indices, impurity);
    if (!split.found) return;

    tree.a[t - 1] = split.feature;
    tree.b[t - 1] = split.threshold;

    std::vector<int> left, right;
    for (int i : indices) {
        if (ds.at(i, split.feature - 1) < split.threshold)
            left.push_back(i);
        else
            right.push_back(i);
    }
    cart_build(ds, left, tree, 2 * t, level + 1, n_min, impurity);
    cart_build(ds, right, tree, 2 * t + 1, level + 1, n_min, impurity);
}

}  // namespace

TreeParams cart_train(const Dataset& ds, int depth, int n_min, Impurity impurity) {
    if (ds.n == 0) throw DataError("cart_train on an empty dataset");
    TreeParams tree = TreeParams::artificial(depth);
    std::vector<int> indices(ds.n);
    std::iota(indices.begin(), indices.end(), 0);
    cart_build(ds, indices, tree, 1, 0, n_min, impurity);
    return assign_leaf_classes(std::move(tree), ds);
}

TreeParams exact_depth1(const Dataset& ds, const ThresholdSets& th, double alpha, int n_min) {
    if (ds.n == 0) throw DataError("exact_depth1 on an empty dataset");
    std::vector<int> indices(ds.n);
    std::iota(indices.begin(), indices.end(), 0);
    const Depth1Solution best = depth1_exact(ds, indices, th, alpha, n_min);
    TreeParams tree = TreeParams::artificial(1);
    if (best.has_split) {
        tree.a[0] = best.feature;
        tree.b[0] = best.threshold;
    }
    return assign_leaf_classes(std::move(tree), ds);
}

TreeParams exact_depth2(const Dataset& ds, const ThresholdSets& th, double alpha, int n_min) {
    if (ds.n == 0) throw DataError("exact_depth2 on an empty dataset");
    if (th.total_candidates() > kExactDepth2Budget)
        throw BudgetError("exact_depth2 budget exceeded: " +
                          std::to_string(th.total_candidates()) + " threshold candidates > " +
                          std::to_string(kExactDepth2Budget));

    std::vector<int> indices(ds.n);
    std::iota(indices.begin(), indices.end(), 0);

    ClassCounts all(ds.k);
    for (int i : indices) all.add(ds.y[i]);

    // Baseline: no splits anywhere.
    TreeParams best = TreeParams::artificial(2);
    double best_cost = static_cast<double>(all.misclassified()) + violation(all.total, n_min);

    std::vector<int> left, right;
    for (int p = 0; p < ds.p; ++p) {
        for (double beta : th.beta[p]) {
            left.clear();
            right.clear();
            for (int i : indices) {
                if (ds.at(i, p) < beta)
                    left.push_back(i);
                else
                    right.push_back(i);
            }
            const Depth1Solution ls = depth1_exact(ds, left, th, alpha, n_min);
            const Depth1Solution rs = depth1_exact(ds, right, th, alpha, n_min);
            const double cost = alpha + ls.cost + rs.cost;
            if (cost < best_cost) {
                best_cost = cost;
                best = TreeParams::artificial(2);
                best.a[0] = p + 1;
                best.b[0] = beta;
                if (ls.has_split) {
                    best.a[1] = ls.feature;
                    best.b[1] = ls.threshold;
                }
                if (rs.has_split) {
                    best.a[2] = rs.feature;
                    best.b[2] = rs.threshold;
                }
            }
        }
    }
    return assign_leaf_classes(std::move(best), ds);
}

double naive_fitness_oracle(const TreeParams& tree, const Dataset& ds,
                            double alpha, int n_min) {
    const int sb = tree.branch_count();
    const int sl = tree.leaf_count();
    std::vector<std::vector<long long>> counts(sl, std::vector<long long>(ds.k, 0));
    std::vector<long long> leaf_n(sl, 0);
    for (int i = 0; i < ds.n; ++i) {
        const int leaf = route(tree, ds.row(i)) - sb - 1;
        ++leaf_n[leaf];
        if (ds.y[i] >= 1) ++counts[leaf][ds.y[i] - 1];
    }
    long long matched = 0;
    int violations = 0;
    for (int l = 0; l < sl; ++l) {
        long long best = 0;
        for (int k = 0; k < ds.k; ++k) best = std::max(best, counts[l][k]);
        matched += best;
        violations += violation(leaf_n[l], n_min);
    }
    int active = 0;
    for (int t = 0; t < sb; ++t)
        if (tree.a[t] >= 1) ++active;
    return static_cast<double>(ds.n - matched) + alpha * active + violations;
}

}  // namespace detree
