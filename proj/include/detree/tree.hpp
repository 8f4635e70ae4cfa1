#pragma once

#include <span>
#include <vector>

#include "detree/dataset.hpp"

namespace detree {

// Complete binary tree of depth D as parameter vectors. Branch nodes are
// indexed 1..2^D-1 top-to-bottom, left-to-right; leaves follow. a[t]=0 marks
// an artificial node: no split, every sample routed to the right child, and
// b[t] forced to 0.
struct TreeParams {
    int depth = 0;
    std::vector<int> a;     // size 2^D - 1, values in 0..P
    std::vector<double> b;  // size 2^D - 1, values in [0,1]
    std::vector<int> c;     // size 2^D, leaf classes in 1..K

    static TreeParams artificial(int depth);

    int branch_count() const { return (1 << depth) - 1; }
    int leaf_count() const { return 1 << depth; }
    int total_nodes() const { return (1 << (depth + 1)) - 1; }

    // 1-based node accessors matching the index convention above.
    int feature(int t) const { return a[t - 1]; }
    double threshold(int t) const { return b[t - 1]; }
    int leaf_class(int t) const { return c[t - 1 - branch_count()]; }

    bool same_structure(const TreeParams& other) const {
        return depth == other.depth && a == other.a && b == other.b;
    }
};

// Node depth with root depth 0.
inline int node_depth(int t) {
    int d = 0;
    while (t > 1) {
        t >>= 1;
        ++d;
    }
    return d;
}

struct ObjectiveReport {
    long long misclassified = 0;
    int active_splits = 0;
    int violations = 0;
    std::vector<long long> leaf_counts;               // n_t per leaf
    std::vector<std::vector<long long>> class_counts; // per leaf, per class
    double fitness = 0.0;
};

// Routes one sample to its leaf index (1-based, in SB+1..T).
int route(const TreeParams& tree, std::span<const double> x);

// Majority class per leaf; empty leaves default to class 1, ties break to
// the smallest class id.
TreeParams assign_leaf_classes(TreeParams tree, const Dataset& ds);

int predict(const TreeParams& tree, std::span<const double> x);

// Misclassification + alpha * active splits + small-leaf violations.
ObjectiveReport objective(const TreeParams& tree, const Dataset& ds,
                          double alpha, int n_min);

// Copies the d-layer subtree rooted at branch node t, re-indexed so t
// becomes the root. Throws std::out_of_range if it does not fit.
TreeParams subtree_at(const TreeParams& tree, int t, int d);

// Writes sub's root split parameters into node t of dest.
void graft_first_node(TreeParams& dest, int t, const TreeParams& sub);

// Model artifact: depth, a, b, c, class dictionary and scaling stats in a
// fixed JSON field order; round-trips exactly.
void save_model(const std::string& path, const TreeParams& tree, const Encoder& encoder);
struct Model {
    TreeParams tree;
    Encoder encoder;
};
Model load_model(const std::string& path);
std::string model_to_json(const TreeParams& tree, const Encoder& encoder);
Model model_from_json(const std::string& text);

}  // namespace detree
