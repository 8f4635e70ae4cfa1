#pragma once

#include <optional>
#include <stdexcept>

#include "detree/dataset.hpp"
#include "detree/tree.hpp"

namespace detree {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Impurity { gini, misclassification };

struct SplitCandidate {
    int feature = 0;        // 1-based
    double threshold = 0.0;
    long long loss = 0;     // misclassified samples after majority-labeling both children
};

// Exhaustive scan of every (feature, threshold-set entry) pair; ties break
// to the lower feature id, then the lower threshold. Empty when no candidate
// strictly beats the majority-label loss.
std::optional<SplitCandidate> best_split_misclass(const Dataset& ds, const ThresholdSets& th);

// Greedy top-down CART to depth D with complete-structure output (artificial
// nodes pad pruned regions) so the result can seed DE directly. A node stays
// artificial when its sample count is <= n_min, its labels are pure, or no
// split strictly reduces the impurity.
TreeParams cart_train(const Dataset& ds, int depth, int n_min, Impurity impurity);

// Exact depth-1 solve of the full objective: the best single split, or the
// no-split tree when no split pays for its alpha cost and leaf violations.
// At alpha = 0, n_min = 1 this coincides with best_split_misclass.
TreeParams exact_depth1(const Dataset& ds, const ThresholdSets& th, double alpha, int n_min);

// Global optimum of the depth-2 objective (misclassification + alpha *
// active splits + small-leaf violations) by enumerating every root split and
// solving both children exactly. Guarded: throws BudgetError when the total
// threshold candidate count exceeds 5000.
TreeParams exact_depth2(const Dataset& ds, const ThresholdSets& th, double alpha, int n_min);

inline constexpr std::size_t kExactDepth2Budget = 5000;

// Reference fitness: routes each sample individually, no batching. The
// batched evaluator must match this exactly.
double naive_fitness_oracle(const TreeParams& tree, const Dataset& ds,
                            double alpha, int n_min);

}  // namespace detree
