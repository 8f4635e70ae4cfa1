#include "detree/fitness.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace detree {

int EvalConfig::resolved_workers() const {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

// Branch parameters of all trees flattened side by side so the routing loop
// touches two contiguous arrays.
struct FlatTrees {
    int count = 0;
    int branch = 0;
    std::vector<std::int32_t> a;
    std::vector<double> b;

    explicit FlatTrees(std::span<const TreeParams> trees) {
        count = static_cast<int>(trees.size());
        branch = trees.empty() ? 0 : trees[0].branch_count();
        a.resize(static_cast<std::size_t>(count) * branch);
        b.resize(static_cast<std::size_t>(count) * branch);
        for (int r = 0; r < count; ++r) {
            for (int t = 0; t < branch; ++t) {
                a[static_cast<std::size_t>(r) * branch + t] = trees[r].a[t];
                b[static_cast<std::size_t>(r) * branch + t] = trees[r].b[t];
            }
        }
    }
};

void accumulate_strides(const FlatTrees& flat, const Dataset& ds, int n_stride,
                        int stride_begin, int stride_end, int leaves,
                        std::int32_t* local) {
    const int sb = flat.branch;
    const int k = ds.k;
    for (int s = stride_begin; s < stride_end; ++s) {
        const int i0 = s * n_stride;
        const int i1 = std::min(ds.n, i0 + n_stride);
        for (int r = 0; r < flat.count; ++r) {
            const std::int32_t* a = flat.a.data() + static_cast<std::size_t>(r) * sb;
            const double* b = flat.b.data() + static_cast<std::size_t>(r) * sb;
            std::int32_t* out = local + static_cast<std::size_t>(r) * leaves * k;
            for (int i = i0; i < i1; ++i) {
                const double* x = ds.x.data() + static_cast<std::size_t>(i) * ds.p;
                int t = 1;
                while (t <= sb) {
                    const std::int32_t f = a[t - 1];
                    t = (f != 0 && x[f - 1] < b[t - 1]) ? 2 * t : 2 * t + 1;
                }
                ++out[(t - sb - 1) * k + (ds.y[i] - 1)];
            }
        }
    }
}

}  // namespace

ClassCountTensor class_count_tensor(std::span<const TreeParams> trees,
                                    const Dataset& ds, const EvalConfig& cfg) {
    if (trees.empty()) throw std::invalid_argument("class_count_tensor: no trees");
    if (ds.n == 0) throw std::invalid_argument("class_count_tensor: empty dataset");
    if (cfg.n_stride < 1) throw std::invalid_argument("n_stride must be >= 1");
    for (const auto& tree : trees)
        if (tree.depth != trees[0].depth)
            throw std::invalid_argument("all trees must share one depth");
    for (int i = 0; i < ds.n; ++i)
        if (ds.y[i] < 1 || ds.y[i] > ds.k)
            throw std::invalid_argument("class_count_tensor: label outside 1..K");

    const FlatTrees flat(trees);
    ClassCountTensor tensor;
    tensor.trees = flat.count;
    tensor.leaves = 1 << trees[0].depth;
    tensor.classes = ds.k;
    const std::size_t slice = static_cast<std::size_t>(tensor.leaves) * tensor.classes;
    tensor.z.assign(static_cast<std::size_t>(tensor.trees) * slice, 0);

    const int n_strides = (ds.n + cfg.n_stride - 1) / cfg.n_stride;
    const int workers = std::max(1, std::min(cfg.resolved_workers(), n_strides));

    if (workers == 1) {
        accumulate_strides(flat, ds, cfg.n_stride, 0, n_strides, tensor.leaves,
                           tensor.z.data());
        return tensor;
    }

    // Each worker owns a private accumulator over a contiguous block of
    // strides; the join is a plain integer sum, so scheduling cannot change
    // the result.
    std::vector<std::vector<std::int32_t>> locals(
        workers, std::vector<std::int32_t>(tensor.z.size(), 0));
    std::vector<std::thread> pool;
    const int per = (n_strides + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * per;
        const int end = std::min(n_strides, begin + per);
        if (begin >= end) continue;
        pool.emplace_back([&, w, begin, end] {
            accumulate_strides(flat, ds, cfg.n_stride, begin, end, tensor.leaves,
                               locals[w].data());
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& local : locals)
        for (std::size_t i = 0; i < tensor.z.size(); ++i) tensor.z[i] += local[i];
    return tensor;
}

double fitness_from_counts(const ClassCountTensor& counts, int r,
                           const TreeParams& tree, const EvalConfig& cfg) {
    const auto slice = counts.slice(r);
    long long n = 0;
    long long matched = 0;
    int violations = 0;
    for (int l = 0; l < counts.leaves; ++l) {
        long long leaf_n = 0;
        long long best = 0;
        for (int k = 0; k < counts.classes; ++k) {
            const long long c = slice[static_cast<std::size_t>(l) * counts.classes + k];
            leaf_n += c;
            best = std::max(best, c);
        }
        n += leaf_n;
        matched += best;
        if (leaf_n > 0 && leaf_n < cfg.n_min) ++violations;
    }
    int active = 0;
    for (int t = 0; t < tree.branch_count(); ++t)
        if (tree.a[t] >= 1) ++active;
    return static_cast<double>(n - matched) + cfg.alpha * active + violations;
}

std::vector<double> evaluate_trees(std::span<const TreeParams> trees,
                                   const Dataset& ds, const EvalConfig& cfg) {
    const ClassCountTensor tensor = class_count_tensor(trees, ds, cfg);
    std::vector<double> fitness(trees.size());
    for (std::size_t r = 0; r < trees.size(); ++r)
        fitness[r] = fitness_from_counts(tensor, static_cast<int>(r), trees[r], cfg);
    return fitness;
}

std::vector<double> evaluate_population(std::span<const Individual> members,
                                        const Dataset& ds, const ThresholdSets& th,
                                        const EvalConfig& cfg) {
    if (members.empty()) throw std::invalid_argument("evaluate_population: empty population");
    std::vector<TreeParams> trees;
    trees.reserve(members.size());
    for (const auto& member : members) trees.push_back(decode(member, th, ds.p));
    return evaluate_trees(trees, ds, cfg);
}

}  // namespace detree
