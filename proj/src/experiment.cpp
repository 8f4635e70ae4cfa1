#include "detree/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "detree/greedy.hpp"
#include "detree/rng.hpp"

namespace detree {

namespace {

using Clock = std::chrono::steady_clock;
using ordered_json = nlohmann::ordered_json;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::cart: return "cart";
        case Method::deoct: return "deoct";
        case Method::mh_deoct: return "mh-deoct";
        case Method::oracle_d1: return "oracle-d1";
        case Method::oracle_d2: return "oracle-d2";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "cart") return Method::cart;
    if (name == "deoct") return Method::deoct;
    if (name == "mh-deoct") return Method::mh_deoct;
    if (name == "oracle-d1") return Method::oracle_d1;
    if (name == "oracle-d2") return Method::oracle_d2;
    throw ConfigError("unknown method: " + name);
}

int ExperimentConfig::resolved_mh_depth() const {
    if (mh_depth > 0) return std::min(mh_depth, depth);
    return std::min(depth, depth <= 2 ? 2 : 3);
}

DeConfig ExperimentConfig::de_config(std::uint64_t seed) const {
    DeConfig de = mode == DeMode::long_run ? DeConfig::long_run(seed) : DeConfig::normal(seed);
    if (population > 0) de.population = population;
    if (generations > 0) de.generations = generations;
    de.crossover_rate = crossover_rate;
    return de;
}

EvalConfig ExperimentConfig::eval_config() const {
    EvalConfig eval;
    eval.n_stride = n_stride;
    eval.alpha = alpha;
    eval.n_min = n_min;
    eval.depth = depth;
    eval.workers = workers;
    return eval;
}

double accuracy_percent(const TreeParams& tree, const Dataset& ds) {
    if (ds.n == 0) return std::nan("");
    long long correct = 0;
    for (int i = 0; i < ds.n; ++i)
        if (predict(tree, ds.row(i)) == ds.y[i]) ++correct;
    return 100.0 * static_cast<double>(correct) / ds.n;
}

Aggregate aggregate_of(const std::vector<double>& values) {
    Aggregate agg;
    if (values.empty()) return agg;
    std::vector<double> finite;
    for (double v : values)
        if (!std::isnan(v)) finite.push_back(v);
    if (finite.empty()) {
        agg.mean = std::nan("");
        agg.stddev = std::nan("");
        return agg;
    }
    agg.mean = std::accumulate(finite.begin(), finite.end(), 0.0) / finite.size();
    if (finite.size() > 1) {
        double ss = 0.0;
        for (double v : finite) ss += (v - agg.mean) * (v - agg.mean);
        agg.stddev = std::sqrt(ss / (finite.size() - 1));
    }
    return agg;
}

namespace {

struct RepetitionData {
    Dataset train;
    Dataset validation;
    Dataset test;
    Encoder encoder;
    ThresholdSets thresholds;
};

RepetitionData prepare_repetition(const RawTable& raw, const ExperimentConfig& cfg,
                                  std::uint64_t rep_seed) {
    SplitSpec spec;
    spec.train_fraction = cfg.train_fraction;
    spec.validation_fraction = cfg.validation_fraction;
    spec.seed = rep_seed;
    const SplitIndices idx = split_indices(raw.n(), spec);

    RepetitionData data;
    EncodedTrain train = encode_and_scale(raw.subset(idx.train));
    data.encoder = std::move(train.encoder);
    data.train = std::move(train.data);
    data.validation = idx.validation.empty() ? Dataset{}
                                             : data.encoder.apply(raw.subset(idx.validation));
    data.test = data.encoder.apply(raw.subset(idx.test));
    data.thresholds = build_threshold_sets(data.train);
    return data;
}

TreeParams oracle_depth1(const Dataset& train, const ThresholdSets& th) {
    TreeParams tree = TreeParams::artificial(1);
    if (const auto split = best_split_misclass(train, th)) {
        tree.a[0] = split->feature;
        tree.b[0] = split->threshold;
    }
    return assign_leaf_classes(std::move(tree), train);
}

// Trains one tree with the configured method; wall time includes any
// warm-start computation the method performs.
TrainedModel train_once(const ExperimentConfig& cfg, const Dataset& train,
                        const ThresholdSets& th, const Encoder& encoder,
                        double alpha, std::uint64_t de_seed) {
    EvalConfig eval = cfg.eval_config();
    eval.alpha = alpha;

    TrainedModel model;
    model.encoder = encoder;
    const auto t0 = Clock::now();
    switch (cfg.method) {
        case Method::cart:
            model.tree = cart_train(train, cfg.depth, cfg.n_min, Impurity::gini);
            break;
        case Method::deoct: {
            std::vector<TreeParams> warm;
            if (cfg.warm_start.cart_in_de)
                warm.push_back(cart_train(train, cfg.depth, cfg.n_min, Impurity::gini));
            DeResult result = run_deoct(train, th, cfg.depth, eval, cfg.de_config(de_seed), warm);
            for (std::size_t i = 1; i < result.history.size(); ++i)
                if (result.history[i] > result.history[i - 1]) ++model.elitism_violations;
            model.tree = std::move(result.best_tree);
            break;
        }
        case Method::mh_deoct: {
            MhConfig mh;
            mh.depth = cfg.depth;
            mh.mh_depth = cfg.resolved_mh_depth();
            mh.oct = eval;
            mh.de = cfg.de_config(de_seed);
            mh.warm_start = cfg.warm_start;
            MhResult result = run_mh_deoct(train, th, mh);
            model.elitism_violations = result.report.elitism_violations;
            model.tree = std::move(result.tree);
            break;
        }
        case Method::oracle_d1:
            model.tree = oracle_depth1(train, th);
            break;
        case Method::oracle_d2:
            model.tree = exact_depth2(train, th, alpha, cfg.n_min);
            break;
    }
    model.seconds = seconds_since(t0);
    return model;
}

RepetitionRow measure(const ExperimentConfig& cfg, const TrainedModel& model,
                      const RepetitionData& data, int rep, std::uint64_t rep_seed,
                      double alpha) {
    RepetitionRow row;
    row.rep = rep;
    row.seed = rep_seed;
    row.alpha = alpha;
    row.train_accuracy = accuracy_percent(model.tree, data.train);
    row.validation_accuracy =
        data.validation.n > 0 ? accuracy_percent(model.tree, data.validation) : std::nan("");
    row.test_accuracy = accuracy_percent(model.tree, data.test);
    const ObjectiveReport obj = objective(model.tree, data.train, alpha, cfg.n_min);
    row.fitness = obj.fitness;
    row.active_splits = obj.active_splits;
    row.seconds = model.seconds;
    row.elitism_violations = model.elitism_violations;
    return row;
}

ordered_json config_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["data"] = cfg.data_path;
    j["label_column"] = cfg.schema.label_column;
    j["categorical_columns"] = cfg.schema.categorical_columns;
    j["method"] = method_name(cfg.method);
    j["depth"] = cfg.depth;
    j["mh_depth"] = cfg.resolved_mh_depth();
    j["alpha"] = cfg.alpha;
    j["tune"] = cfg.tune;
    if (cfg.tune) j["alpha_grid"] = cfg.alpha_grid;
    j["n_min"] = cfg.n_min;
    j["mode"] = cfg.mode == DeMode::long_run ? "long" : "normal";
    j["population"] = cfg.de_config(0).population;
    j["generations"] = cfg.de_config(0).generations;
    j["crossover_rate"] = cfg.crossover_rate;
    j["repetitions"] = cfg.repetitions;
    j["base_seed"] = cfg.base_seed;
    j["n_stride"] = cfg.n_stride;
    j["train_fraction"] = cfg.train_fraction;
    j["validation_fraction"] = cfg.validation_fraction;
    j["warm_start"] = {{"cart_in_de", cfg.warm_start.cart_in_de},
                       {"de_warm", cfg.warm_start.de_warm},
                       {"cart_warm", cfg.warm_start.cart_warm}};
    return j;
}

void finalize_report(RunReport& report) {
    std::vector<double> train, val, test, fit, splits, secs;
    for (const auto& row : report.rows) {
        train.push_back(row.train_accuracy);
        val.push_back(row.validation_accuracy);
        test.push_back(row.test_accuracy);
        fit.push_back(row.fitness);
        splits.push_back(row.active_splits);
        secs.push_back(row.seconds);
    }
    report.train_accuracy = aggregate_of(train);
    report.validation_accuracy = aggregate_of(val);
    report.test_accuracy = aggregate_of(test);
    report.fitness = aggregate_of(fit);
    report.active_splits = aggregate_of(splits);
    report.seconds = aggregate_of(secs);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (cfg.depth < 1) throw ConfigError("depth must be >= 1");
    if (cfg.n_min < 1) throw ConfigError("n_min must be >= 1");
    if (cfg.alpha < 0.0) throw ConfigError("alpha must be >= 0");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0)
        throw ConfigError("crossover rate must be in [0, 1]");
    if (cfg.n_stride < 1) throw ConfigError("n_stride must be >= 1");
    if (cfg.method == Method::oracle_d1 && cfg.depth != 1)
        throw ConfigError("oracle-d1 requires depth 1");
    if (cfg.method == Method::oracle_d2 && cfg.depth != 2)
        throw ConfigError("oracle-d2 requires depth 2");
}

}  // namespace

ExperimentOutput run_experiment_with_model(const ExperimentConfig& cfg) {
    validate(cfg);
    if (cfg.tune) {
        auto [alpha_star, report] = tune_alpha(cfg);
        (void)alpha_star;
        return {std::move(report), std::nullopt};
    }

    const RawTable raw = load_csv(cfg.data_path, cfg.schema);
    ExperimentOutput out;
    out.report.config_echo = config_json(cfg).dump(2);

    double best_test = -1.0;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        const std::uint64_t rep_seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
        const RepetitionData data = prepare_repetition(raw, cfg, rep_seed);
        TrainedModel model = train_once(cfg, data.train, data.thresholds, data.encoder,
                                        cfg.alpha, derive_seed(rep_seed, "de"));
        out.report.rows.push_back(measure(cfg, model, data, rep, rep_seed, cfg.alpha));
        if (out.report.rows.back().test_accuracy > best_test) {
            best_test = out.report.rows.back().test_accuracy;
            out.best_model = std::move(model);
        }
    }
    finalize_report(out.report);
    return out;
}

RunReport run_experiment(const ExperimentConfig& cfg) {
    return run_experiment_with_model(cfg).report;
}

std::pair<double, RunReport> tune_alpha(const ExperimentConfig& cfg) {
    ExperimentConfig tuned = cfg;
    tuned.tune = false;  // guard against recursion when reusing helpers
    if (tuned.validation_fraction <= 0.0) {
        tuned.train_fraction = 0.50;
        tuned.validation_fraction = 0.25;
    }
    validate(tuned);

    const RawTable raw = load_csv(tuned.data_path, tuned.schema);

    RunReport report;
    {
        ExperimentConfig echo = cfg;
        echo.tune = true;
        echo.train_fraction = tuned.train_fraction;
        echo.validation_fraction = tuned.validation_fraction;
        report.config_echo = config_json(echo).dump(2);
    }

    std::map<double, int> alpha_votes;
    for (int rep = 0; rep < tuned.repetitions; ++rep) {
        const std::uint64_t rep_seed = tuned.base_seed + static_cast<std::uint64_t>(rep);
        const RepetitionData data = prepare_repetition(raw, tuned, rep_seed);
        if (data.validation.n == 0) throw ConfigError("alpha tuning requires a validation split");

        std::vector<double> grid = tuned.alpha_grid;
        if (grid.empty())
            for (int j = 0; j <= 20; ++j)
                grid.push_back(0.05 * j / 20.0 * data.train.n);

        const auto t0 = Clock::now();
        double best_alpha = grid.front();
        double best_val = -1.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            TrainedModel candidate =
                train_once(tuned, data.train, data.thresholds, data.encoder, grid[j],
                           derive_seed(rep_seed, "de-grid", j));
            const double val_acc = accuracy_percent(candidate.tree, data.validation);
            if (val_acc > best_val) {
                best_val = val_acc;
                best_alpha = grid[j];
            }
        }

        // Retrain on train+validation with the chosen alpha. The combined
        // set equals the train partition of a run without validation, so a
        // singleton {0} grid reproduces the plain protocol.
        SplitSpec spec;
        spec.train_fraction = tuned.train_fraction;
        spec.validation_fraction = tuned.validation_fraction;
        spec.seed = rep_seed;
        const SplitIndices idx = split_indices(raw.n(), spec);
        std::vector<int> combined = idx.train;
        combined.insert(combined.end(), idx.validation.begin(), idx.validation.end());
        std::sort(combined.begin(), combined.end());

        RepetitionData final_data;
        EncodedTrain enc = encode_and_scale(raw.subset(combined));
        final_data.encoder = std::move(enc.encoder);
        final_data.train = std::move(enc.data);
        final_data.test = final_data.encoder.apply(raw.subset(idx.test));
        final_data.thresholds = build_threshold_sets(final_data.train);

        TrainedModel model =
            train_once(tuned, final_data.train, final_data.thresholds, final_data.encoder,
                       best_alpha, derive_seed(rep_seed, "de"));
        model.seconds = seconds_since(t0);  // tuning time counts, grid included
        report.rows.push_back(measure(tuned, model, final_data, rep, rep_seed, best_alpha));
        ++alpha_votes[best_alpha];
    }
    finalize_report(report);

    double alpha_star = report.rows.front().alpha;
    int votes = 0;
    for (const auto& [value, count] : alpha_votes)
        if (count > votes) {
            votes = count;
            alpha_star = value;
        }
    return {alpha_star, std::move(report)};
}

namespace {

ordered_json row_json(const RepetitionRow& row) {
    ordered_json j;
    j["rep"] = row.rep;
    j["seed"] = row.seed;
    j["alpha"] = row.alpha;
    j["train_accuracy"] = row.train_accuracy;
    if (std::isnan(row.validation_accuracy))
        j["validation_accuracy"] = nullptr;
    else
        j["validation_accuracy"] = row.validation_accuracy;
    j["test_accuracy"] = row.test_accuracy;
    j["fitness"] = row.fitness;
    j["active_splits"] = row.active_splits;
    j["seconds"] = row.seconds;
    j["elitism_violations"] = row.elitism_violations;
    return j;
}

ordered_json aggregate_json(const Aggregate& agg) {
    ordered_json j;
    if (std::isnan(agg.mean)) {
        j["mean"] = nullptr;
        j["std"] = nullptr;
    } else {
        j["mean"] = agg.mean;
        j["std"] = agg.stddev;
    }
    return j;
}

std::string format_accuracy(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string format_general(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    ordered_json doc;
    doc["config"] = ordered_json::parse(report.config_echo.empty() ? "{}" : report.config_echo);
    doc["repetitions"] = ordered_json::array();
    for (const auto& row : report.rows) doc["repetitions"].push_back(row_json(row));
    ordered_json agg;
    agg["train_accuracy"] = aggregate_json(report.train_accuracy);
    agg["validation_accuracy"] = aggregate_json(report.validation_accuracy);
    agg["test_accuracy"] = aggregate_json(report.test_accuracy);
    agg["fitness"] = aggregate_json(report.fitness);
    agg["active_splits"] = aggregate_json(report.active_splits);
    agg["seconds"] = aggregate_json(report.seconds);
    doc["aggregate"] = std::move(agg);
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
    std::ostringstream os;
    os << "rep,seed,alpha,train_accuracy,validation_accuracy,test_accuracy,"
          "fitness,active_splits,seconds,elitism_violations\n";
    for (const auto& row : report.rows) {
        os << row.rep << ',' << row.seed << ',' << format_general(row.alpha) << ','
           << format_accuracy(row.train_accuracy) << ','
           << format_accuracy(row.validation_accuracy) << ','
           << format_accuracy(row.test_accuracy) << ',' << format_general(row.fitness) << ','
           << row.active_splits << ',' << format_general(row.seconds) << ','
           << row.elitism_violations << '\n';
    }
    os << "mean,,," << format_accuracy(report.train_accuracy.mean) << ','
       << format_accuracy(report.validation_accuracy.mean) << ','
       << format_accuracy(report.test_accuracy.mean) << ','
       << format_general(report.fitness.mean) << ','
       << format_general(report.active_splits.mean) << ','
       << format_general(report.seconds.mean) << ",\n";
    os << "std,,," << format_accuracy(report.train_accuracy.stddev) << ','
       << format_accuracy(report.validation_accuracy.stddev) << ','
       << format_accuracy(report.test_accuracy.stddev) << ','
       << format_general(report.fitness.stddev) << ','
       << format_general(report.active_splits.stddev) << ','
       << format_general(report.seconds.stddev) << ",\n";
    return os.str();
}

void emit_report(const RunReport& report, const std::string& path, ReportFormat format) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report file: " + path);
    out << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
}

}  // namespace detree
