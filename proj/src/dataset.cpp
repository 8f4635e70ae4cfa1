#include "detree/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "detree/rng.hpp"
#include "detree/tree.hpp"

namespace detree {

namespace {

std::vector<std::string> parse_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"' && cur.empty()) {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

int RawTable::label_column() const {
    for (std::size_t j = 0; j < columns.size(); ++j)
        if (columns[j].type == ColumnType::label) return static_cast<int>(j);
    throw DataError("table has no label column");
}

RawTable RawTable::subset(std::span<const int> indices) const {
    RawTable out;
    out.columns = columns;
    out.rows.reserve(indices.size());
    for (int i : indices) out.rows.push_back(rows[i]);
    return out;
}

RawTable load_csv(const std::string& path, const TableSchema& schema) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    const auto header = parse_csv_line(line);

    RawTable table;
    bool saw_label = false;
    for (const auto& name : header) {
        ColumnSpec spec{name, ColumnType::numeric};
        if (name == schema.label_column) {
            if (saw_label) throw DataError(path + ": duplicate label column '" + name + "'");
            spec.type = ColumnType::label;
            saw_label = true;
        } else if (std::find(schema.categorical_columns.begin(),
                             schema.categorical_columns.end(),
                             name) != schema.categorical_columns.end()) {
            spec.type = ColumnType::categorical;
        }
        table.columns.push_back(std::move(spec));
    }
    if (!saw_label)
        throw DataError(path + ": label column '" + schema.label_column + "' not in header");
    for (const auto& cat : schema.categorical_columns)
        if (std::none_of(table.columns.begin(), table.columns.end(),
                         [&](const ColumnSpec& c) { return c.name == cat; }))
            throw DataError(path + ": categorical column '" + cat + "' not in header");

    const std::size_t arity = table.columns.size();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
        auto fields = parse_csv_line(line);
        if (fields.size() != arity)
            throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(arity) + " fields, got " +
                            std::to_string(fields.size()));
        for (std::size_t j = 0; j < arity; ++j) {
            if (fields[j].empty())
                throw DataError(path + ":" + std::to_string(line_no) +
                                ": missing value in column '" + table.columns[j].name + "'");
            if (table.columns[j].type == ColumnType::numeric) {
                double v;
                if (!parse_double(fields[j], v))
                    throw DataError(path + ":" + std::to_string(line_no) +
                                    ": non-numeric token '" + fields[j] + "' in column '" +
                                    table.columns[j].name + "'");
            }
        }
        table.rows.push_back(std::move(fields));
    }
    return table;
}

EncodedTrain encode_and_scale(const RawTable& raw) {
    const int label_col = raw.label_column();
    if (raw.rows.empty()) throw DataError("cannot encode an empty table");

    Encoder enc;
    for (std::size_t j = 0; j < raw.columns.size(); ++j) {
        if (static_cast<int>(j) == label_col) continue;
        Encoder::Column col;
        if (raw.columns[j].type == ColumnType::categorical) {
            col.categorical = true;
            col.cat.name = raw.columns[j].name;
            for (const auto& row : raw.rows) {
                const auto& v = row[j];
                if (std::find(col.cat.categories.begin(), col.cat.categories.end(), v) ==
                    col.cat.categories.end())
                    col.cat.categories.push_back(v);
            }
            for (const auto& cat : col.cat.categories)
                enc.feature_names.push_back(raw.columns[j].name + "=" + cat);
        } else {
            col.numeric.name = raw.columns[j].name;
            double lo = 0.0, hi = 0.0;
            for (std::size_t i = 0; i < raw.rows.size(); ++i) {
                double v;
                parse_double(raw.rows[i][j], v);
                if (i == 0) {
                    lo = hi = v;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            col.numeric.min = lo;
            col.numeric.max = hi;
            enc.feature_names.push_back(raw.columns[j].name);
        }
        enc.columns.push_back(std::move(col));
    }

    for (const auto& row : raw.rows) {
        const auto& label = row[label_col];
        if (std::find(enc.class_dictionary.begin(), enc.class_dictionary.end(), label) ==
            enc.class_dictionary.end())
            enc.class_dictionary.push_back(label);
    }

    return {enc.apply(raw), std::move(enc)};
}

Dataset Encoder::apply(const RawTable& raw) const {
    const int label_col = raw.label_column();
    Dataset ds;
    ds.n = raw.n();
    ds.p = feature_count();
    ds.k = static_cast<int>(class_dictionary.size());
    ds.x.resize(static_cast<std::size_t>(ds.n) * ds.p);
    ds.y.resize(ds.n);

    for (int i = 0; i < ds.n; ++i) {
        const auto& row = raw.rows[i];
        double* out = ds.x.data() + static_cast<std::size_t>(i) * ds.p;
        std::size_t in_col = 0;
        for (const auto& col : columns) {
            while (static_cast<int>(in_col) == label_col) ++in_col;
            if (col.categorical) {
                for (const auto& cat : col.cat.categories)
                    *out++ = (row[in_col] == cat) ? 1.0 : 0.0;
            } else {
                double v;
                if (!parse_double(row[in_col], v))
                    throw DataError("non-numeric token '" + row[in_col] + "' in column '" +
                                    col.numeric.name + "'");
                const double range = col.numeric.max - col.numeric.min;
                double scaled = range > 0.0 ? (v - col.numeric.min) / range : 0.0;
                *out++ = std::clamp(scaled, 0.0, 1.0);
            }
            ++in_col;
        }
        const auto& label = raw.rows[i][label_col];
        auto it = std::find(class_dictionary.begin(), class_dictionary.end(), label);
        ds.y[i] = it == class_dictionary.end()
                      ? 0
                      : static_cast<int>(it - class_dictionary.begin()) + 1;
    }
    return ds;
}

SplitIndices split_indices(int n, const SplitSpec& spec) {
    if (spec.train_fraction <= 0.0 || spec.validation_fraction < 0.0 ||
        spec.train_fraction + spec.validation_fraction > 1.0)
        throw DataError("invalid split fractions");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    RngStream rng = derive_stream(spec.seed, "split");
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }

    const int n_train = static_cast<int>(std::floor(spec.train_fraction * n));
    const int n_val = static_cast<int>(std::floor(spec.validation_fraction * n));

    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + n_train);
    out.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    out.test.assign(order.begin() + n_train + n_val, order.end());
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.validation.begin(), out.validation.end());
    std::sort(out.test.begin(), out.test.end());

    if (out.train.size() < 2) throw DataError("train partition smaller than 2 samples");
    if (out.test.empty()) throw DataError("test partition is empty");
    if (spec.validation_fraction > 0.0 && out.validation.empty())
        throw DataError("validation partition is empty");
    return out;
}

namespace {

Dataset take_rows(const Dataset& ds, std::span<const int> indices) {
    Dataset out;
    out.n = static_cast<int>(indices.size());
    out.p = ds.p;
    out.k = ds.k;
    out.x.resize(static_cast<std::size_t>(out.n) * out.p);
    out.y.resize(out.n);
    for (int i = 0; i < out.n; ++i) {
        const auto row = ds.row(indices[i]);
        std::copy(row.begin(), row.end(), out.x.begin() + static_cast<std::size_t>(i) * out.p);
        out.y[i] = ds.y[indices[i]];
    }
    return out;
}

}  // namespace

SplitResult split(const Dataset& ds, const SplitSpec& spec) {
    const auto idx = split_indices(ds.n, spec);
    return {take_rows(ds, idx.train), take_rows(ds, idx.validation), take_rows(ds, idx.test)};
}

ThresholdSets build_threshold_sets(const Dataset& train) {
    if (train.n == 0) throw DataError("cannot build threshold sets from an empty dataset");
    ThresholdSets th;
    th.beta.resize(train.p);
    std::vector<double> values;
    values.reserve(train.n);
    for (int p = 0; p < train.p; ++p) {
        values.clear();
        for (int i = 0; i < train.n; ++i) values.push_back(train.at(i, p));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        auto& beta = th.beta[p];
        beta.clear();
        beta.reserve(values.size() + 1);
        beta.push_back(0.0);
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            beta.push_back(0.5 * (values[i] + values[i + 1]));
        beta.push_back(1.0);
    }
    return th;
}

std::size_t ThresholdSets::total_candidates() const {
    std::size_t total = 0;
    for (const auto& b : beta) total += b.size();
    return total;
}

std::vector<int> subset_indices_by_path(const Dataset& ds, const TreeParams& tree, int t) {
    if (t < 1 || t > tree.total_nodes())
        throw std::out_of_range("node index outside the tree");

    // Ancestor chain from the root down to t (t excluded).
    std::vector<int> path;
    for (int node = t; node > 1; node >>= 1) path.push_back(node);
    std::reverse(path.begin(), path.end());

    std::vector<int> taken;
    for (int i = 0; i < ds.n; ++i) {
        const auto x = ds.row(i);
        int cur = 1;
        bool on_path = true;
        for (int want : path) {
            const int f = tree.feature(cur);
            const int next = (f != 0 && x[f - 1] < tree.threshold(cur)) ? 2 * cur : 2 * cur + 1;
            if (next != want) {
                on_path = false;
                break;
            }
            cur = next;
        }
        if (on_path) taken.push_back(i);
    }
    return taken;
}

Dataset subset_by_path(const Dataset& ds, const TreeParams& tree, int t) {
    const auto idx = subset_indices_by_path(ds, tree, t);
    return take_rows(ds, idx);
}

}  // namespace detree
