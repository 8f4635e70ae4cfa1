#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detree/dataset.hpp"
#include "detree/de.hpp"
#include "detree/mh.hpp"
#include "detree/tree.hpp"

namespace detree {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Method { cart, deoct, mh_deoct, oracle_d1, oracle_d2 };
enum class ReportFormat { json, csv };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentConfig {
    std::string data_path;
    TableSchema schema;
    Method method = Method::mh_deoct;
    int depth = 2;
    int mh_depth = 0;  // 0 = auto: 2 for depth <= 2, else 3 (capped at depth)
    double alpha = 0.0;
    bool tune = false;
    std::vector<double> alpha_grid;  // absolute values; empty = 21 points with alpha/n in [0, 0.05]
    int n_min = 1;
    DeMode mode = DeMode::normal;
    int population = 0;   // 0 = mode default
    int generations = 0;  // 0 = mode default
    double crossover_rate = 0.1;
    int repetitions = 10;
    std::uint64_t base_seed = 1;
    int workers = 0;  // 0 = hardware concurrency
    int n_stride = 32;
    double train_fraction = 0.75;
    double validation_fraction = 0.0;  // tuning defaults to 0.50/0.25/0.25
    WarmStartPolicy warm_start;
    std::string out_path;
    ReportFormat format = ReportFormat::json;

    int resolved_mh_depth() const;
    DeConfig de_config(std::uint64_t seed) const;
    EvalConfig eval_config() const;
};

struct RepetitionRow {
    int rep = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0;  // tuned runs record the selected alpha*
    double train_accuracy = 0.0;
    double validation_accuracy = 0.0;  // NaN when there is no validation split
    double test_accuracy = 0.0;
    double fitness = 0.0;
    int active_splits = 0;
    double seconds = 0.0;  // wall time including warm-start computation
    long long elitism_violations = 0;
};

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, 0 when R = 1
};

struct RunReport {
    std::vector<RepetitionRow> rows;
    Aggregate train_accuracy, validation_accuracy, test_accuracy;
    Aggregate fitness, active_splits, seconds;
    std::string config_echo;  // JSON text of the effective configuration
};

Aggregate aggregate_of(const std::vector<double>& values);

// One trained tree plus everything needed to score raw rows.
struct TrainedModel {
    TreeParams tree;
    Encoder encoder;
    double seconds = 0.0;
    long long elitism_violations = 0;
};

double accuracy_percent(const TreeParams& tree, const Dataset& ds);

// Seeded repetition protocol: repetition i splits with seed base+i, trains
// with the configured method and measures accuracies and wall time.
RunReport run_experiment(const ExperimentConfig& cfg);

// Appendix-style grid tuning: train on the training split for every alpha,
// pick the best validation accuracy (ties to the smaller alpha), retrain on
// train+validation with it, report test accuracy. Returns the modal
// per-repetition alpha* alongside the report.
std::pair<double, RunReport> tune_alpha(const ExperimentConfig& cfg);

void emit_report(const RunReport& report, const std::string& path, ReportFormat format);
std::string report_to_json(const RunReport& report);
std::string report_to_csv(const RunReport& report);

// Model persistence target chosen by the CLI: the repetition with the best
// test accuracy (ties to the earlier repetition).
struct ExperimentOutput {
    RunReport report;
    std::optional<TrainedModel> best_model;
};
ExperimentOutput run_experiment_with_model(const ExperimentConfig& cfg);

}  // namespace detree
