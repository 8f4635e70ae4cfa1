#include "detree/tree.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace detree {

TreeParams TreeParams::artificial(int depth) {
    if (depth < 1) throw std::invalid_argument("tree depth must be >= 1");
    TreeParams tree;
    tree.depth = depth;
    tree.a.assign(static_cast<std::size_t>((1 << depth) - 1), 0);
    tree.b.assign(static_cast<std::size_t>((1 << depth) - 1), 0.0);
    tree.c.assign(static_cast<std::size_t>(1 << depth), 1);
    return tree;
}

int route(const TreeParams& tree, std::span<const double> x) {
    const int sb = tree.branch_count();
    int t = 1;
    while (t <= sb) {
        const int f = tree.a[t - 1];
        t = (f != 0 && x[f - 1] < tree.b[t - 1]) ? 2 * t : 2 * t + 1;
    }
    return t;
}

TreeParams assign_leaf_classes(TreeParams tree, const Dataset& ds) {
    const int sb = tree.branch_count();
    const int sl = tree.leaf_count();
    std::vector<std::vector<long long>> counts(sl, std::vector<long long>(ds.k, 0));
    for (int i = 0; i < ds.n; ++i) {
        const int leaf = route(tree, ds.row(i)) - sb - 1;
        if (ds.y[i] >= 1) ++counts[leaf][ds.y[i] - 1];
    }
    for (int l = 0; l < sl; ++l) {
        int best = 1;
        long long best_count = 0;
        for (int k = 0; k < ds.k; ++k) {
            if (counts[l][k] > best_count) {
                best_count = counts[l][k];
                best = k + 1;
            }
        }
        tree.c[l] = best;
    }
    return tree;
}

int predict(const TreeParams& tree, std::span<const double> x) {
    return tree.c[route(tree, x) - tree.branch_count() - 1];
}

ObjectiveReport objective(const TreeParams& tree, const Dataset& ds,
                          double alpha, int n_min) {
    const int sb = tree.branch_count();
    const int sl = tree.leaf_count();
    ObjectiveReport report;
    report.leaf_counts.assign(sl, 0);
    report.class_counts.assign(sl, std::vector<long long>(ds.k, 0));

    for (int i = 0; i < ds.n; ++i) {
        const int leaf = route(tree, ds.row(i)) - sb - 1;
        ++report.leaf_counts[leaf];
        if (ds.y[i] >= 1) ++report.class_counts[leaf][ds.y[i] - 1];
    }

    long long matched = 0;
    for (int l = 0; l < sl; ++l) {
        long long best = 0;
        for (int k = 0; k < ds.k; ++k) best = std::max(best, report.class_counts[l][k]);
        matched += best;
        if (report.leaf_counts[l] > 0 && report.leaf_counts[l] < n_min) ++report.violations;
    }
    report.misclassified = ds.n - matched;
    for (int t = 0; t < sb; ++t)
        if (tree.a[t] >= 1) ++report.active_splits;
    report.fitness = static_cast<double>(report.misclassified) +
                     alpha * report.active_splits + report.violations;
    return report;
}

TreeParams subtree_at(const TreeParams& tree, int t, int d) {
    if (t < 1 || t > tree.branch_count())
        throw std::out_of_range("subtree root must be a branch node");
    if (d < 1 || node_depth(t) + d > tree.depth)
        throw std::out_of_range("subtree does not fit inside the tree");

    TreeParams sub = TreeParams::artificial(d);
    // Level by level: node s of the subtree corresponds to node
    // t * 2^level + offset of the source tree.
    for (int level = 0; level < d; ++level) {
        const int first_sub = 1 << level;
        for (int offset = 0; offset < first_sub; ++offset) {
            const int src = t * first_sub + offset;
            const int dst = first_sub + offset;
            sub.a[dst - 1] = tree.a[src - 1];
            sub.b[dst - 1] = tree.b[src - 1];
        }
    }
    return sub;
}

void graft_first_node(TreeParams& dest, int t, const TreeParams& sub) {
    if (t < 1 || t > dest.branch_count())
        throw std::out_of_range("graft target must be a branch node");
    dest.a[t - 1] = sub.a[0];
    dest.b[t - 1] = sub.b[0];
}

namespace {

using json = nlohmann::ordered_json;

json encoder_to_json(const Encoder& enc) {
    json cols = json::array();
    for (const auto& col : enc.columns) {
        json c;
        if (col.categorical) {
            c["name"] = col.cat.name;
            c["type"] = "categorical";
            c["categories"] = col.cat.categories;
        } else {
            c["name"] = col.numeric.name;
            c["type"] = "numeric";
            c["min"] = col.numeric.min;
            c["max"] = col.numeric.max;
        }
        cols.push_back(std::move(c));
    }
    json stats;
    stats["columns"] = std::move(cols);
    stats["feature_names"] = enc.feature_names;
    return stats;
}

Encoder encoder_from_json(const json& stats) {
    Encoder enc;
    for (const auto& c : stats.at("columns")) {
        Encoder::Column col;
        if (c.at("type") == "categorical") {
            col.categorical = true;
            col.cat.name = c.at("name");
            col.cat.categories = c.at("categories").get<std::vector<std::string>>();
        } else {
            col.numeric.name = c.at("name");
            col.numeric.min = c.at("min");
            col.numeric.max = c.at("max");
        }
        enc.columns.push_back(std::move(col));
    }
    enc.feature_names = stats.at("feature_names").get<std::vector<std::string>>();
    return enc;
}

}  // namespace

std::string model_to_json(const TreeParams& tree, const Encoder& encoder) {
    json doc;
    doc["depth"] = tree.depth;
    doc["a"] = tree.a;
    doc["b"] = tree.b;
    doc["c"] = tree.c;
    doc["class_dictionary"] = encoder.class_dictionary;
    doc["scaling_stats"] = encoder_to_json(encoder);
    return doc.dump(2);
}

Model model_from_json(const std::string& text) {
    const json doc = json::parse(text);
    Model model;
    model.tree.depth = doc.at("depth");
    model.tree.a = doc.at("a").get<std::vector<int>>();
    model.tree.b = doc.at("b").get<std::vector<double>>();
    model.tree.c = doc.at("c").get<std::vector<int>>();
    model.encoder = encoder_from_json(doc.at("scaling_stats"));
    model.encoder.class_dictionary =
        doc.at("class_dictionary").get<std::vector<std::string>>();
    return model;
}

void save_model(const std::string& path, const TreeParams& tree, const Encoder& encoder) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << model_to_json(tree, encoder) << '\n';
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_json(text);
}

}  // namespace detree
