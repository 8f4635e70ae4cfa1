#include "detree/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detree {

int depth_for_gene_count(std::size_t gene_count) {
    if (gene_count == 0 || gene_count % 2 != 0)
        throw std::invalid_argument("gene count must be 2 * (2^D - 1)");
    const std::size_t sb = gene_count / 2;
    int depth = 0;
    while ((std::size_t(1) << (depth + 1)) - 1 <= sb) ++depth;
    if ((std::size_t(1) << depth) - 1 != sb)
        throw std::invalid_argument("gene count must be 2 * (2^D - 1)");
    return depth;
}

Individual clamp(Individual ind, int features) {
    const int sb = ind.branch_count();
    const double a_top = std::nextafter(static_cast<double>(features) + 1.0, 0.0);
    const double b_top = std::nextafter(1.0, 0.0);
    for (int t = 0; t < sb; ++t)
        ind.genes[t] = std::clamp(ind.genes[t], 0.0, a_top);
    for (int t = sb; t < 2 * sb; ++t)
        ind.genes[t] = std::clamp(ind.genes[t], 0.0, b_top);
    return ind;
}

TreeParams decode(const Individual& ind, const ThresholdSets& th, int features) {
    const int depth = depth_for_gene_count(ind.genes.size());
    const int sb = ind.branch_count();
    TreeParams tree = TreeParams::artificial(depth);
    for (int t = 1; t <= sb; ++t) {
        const int a = static_cast<int>(ind.feature_gene(t));
        if (a == 0) continue;
        if (a > features) throw std::invalid_argument("feature gene outside [0, P+1)");
        const auto& beta = th.beta[a - 1];
        const int cells = static_cast<int>(beta.size());  // n_p + 1
        const int i = static_cast<int>(ind.threshold_gene(t) * cells) + 1;
        tree.a[t - 1] = a;
        tree.b[t - 1] = beta[std::min(i, cells) - 1];
    }
    return tree;
}

Individual encode(const TreeParams& tree, const ThresholdSets& th) {
    const int sb = tree.branch_count();
    Individual ind;
    ind.genes.assign(static_cast<std::size_t>(2 * sb), 0.0);
    for (int t = 1; t <= sb; ++t) {
        const int a = tree.a[t - 1];
        if (a == 0) {
            ind.genes[t - 1] = 0.25;
            continue;
        }
        const auto& beta = th.beta[a - 1];
        const int cells = static_cast<int>(beta.size());
        int nearest = 0;
        double best = std::abs(beta[0] - tree.b[t - 1]);
        for (int i = 1; i < cells; ++i) {
            const double d = std::abs(beta[i] - tree.b[t - 1]);
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
        ind.genes[t - 1] = a + 0.5;
        ind.genes[sb + t - 1] = (nearest + 0.5) / cells;
    }
    return ind;
}

}  // namespace detree
