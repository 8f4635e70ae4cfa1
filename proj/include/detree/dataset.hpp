#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace detree {

struct TreeParams;  // tree.hpp

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ColumnType { numeric, categorical, label };

struct ColumnSpec {
    std::string name;
    ColumnType type = ColumnType::numeric;
};

// Raw tabular data as loaded from CSV: typed columns, cells kept as text
// until encoding. Exactly one label column.
struct RawTable {
    std::vector<ColumnSpec> columns;
    std::vector<std::vector<std::string>> rows;

    int n() const { return static_cast<int>(rows.size()); }
    int label_column() const;
    RawTable subset(std::span<const int> indices) const;
};

// Scaled classification dataset: X row-major in [0,1]^{n x p}, labels in
// 1..k. Label id 0 is reserved for test-time labels unseen during training;
// it can never be predicted, so such samples always count as misclassified.
struct Dataset {
    std::vector<double> x;  // row-major, n*p
    std::vector<int> y;     // size n
    int n = 0;
    int p = 0;
    int k = 0;

    std::span<const double> row(int i) const { return {x.data() + static_cast<std::size_t>(i) * p, static_cast<std::size_t>(p)}; }
    double at(int i, int j) const { return x[static_cast<std::size_t>(i) * p + j]; }
};

struct SplitSpec {
    double train_fraction = 0.75;
    double validation_fraction = 0.0;
    std::uint64_t seed = 0;
};

// Per-feature sorted candidate split values: 0, midpoints of adjacent
// distinct scaled values, 1. beta[p] has unique_count(p) + 1 entries.
struct ThresholdSets {
    std::vector<std::vector<double>> beta;

    int features() const { return static_cast<int>(beta.size()); }
    int unique_count(int p) const { return static_cast<int>(beta[p].size()) - 1; }
    std::size_t total_candidates() const;
};

// Fitted encoding of one raw training table: per-column min-max stats or
// category lists (first-occurrence order), plus the label dictionary.
// Applying it to other rows clamps numerics to [0,1], zero-fills unseen
// categories and maps unseen labels to 0.
struct Encoder {
    struct NumericColumn {
        std::string name;
        double min = 0.0;
        double max = 0.0;
    };
    struct CategoricalColumn {
        std::string name;
        std::vector<std::string> categories;
    };
    struct Column {
        bool categorical = false;
        NumericColumn numeric;
        CategoricalColumn cat;
    };

    std::vector<Column> columns;          // input columns, label excluded
    std::vector<std::string> class_dictionary;  // class id t -> label text, 1-based
    std::vector<std::string> feature_names;     // expanded feature names

    int feature_count() const { return static_cast<int>(feature_names.size()); }
    Dataset apply(const RawTable& raw) const;
};

struct EncodedTrain {
    Dataset data;
    Encoder encoder;
};

struct SplitIndices {
    std::vector<int> train;
    std::vector<int> validation;
    std::vector<int> test;
};

struct SplitResult {
    Dataset train;
    Dataset validation;
    Dataset test;
};

struct TableSchema {
    std::string label_column;
    std::vector<std::string> categorical_columns;
};

RawTable load_csv(const std::string& path, const TableSchema& schema);

EncodedTrain encode_and_scale(const RawTable& raw);

// Seeded shuffle partition of 0..n-1; sizes floor(f_train*n), floor(f_val*n),
// remainder to test. Indices within each part are sorted ascending.
SplitIndices split_indices(int n, const SplitSpec& spec);

SplitResult split(const Dataset& ds, const SplitSpec& spec);

ThresholdSets build_threshold_sets(const Dataset& train);

// Samples routed through node t (1-based) by the ancestor splits of t,
// original order preserved. t may be any node of the complete tree.
Dataset subset_by_path(const Dataset& ds, const TreeParams& tree, int t);
std::vector<int> subset_indices_by_path(const Dataset& ds, const TreeParams& tree, int t);

}  // namespace detree
