#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "detree/experiment.hpp"
#include "detree/greedy.hpp"

namespace {

void print_summary(const detree::RunReport& report) {
    auto pct = [](const detree::Aggregate& agg) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.2f +- %.2f", agg.mean, agg.stddev);
        return std::string(buf);
    };
    std::cout << "train accuracy (%): " << pct(report.train_accuracy) << "\n";
    if (!std::isnan(report.validation_accuracy.mean))
        std::cout << "validation accuracy (%): " << pct(report.validation_accuracy) << "\n";
    std::cout << "test accuracy (%): " << pct(report.test_accuracy) << "\n"
              << "fitness: " << report.fitness.mean << " +- " << report.fitness.stddev << "\n"
              << "active splits: " << report.active_splits.mean << "\n"
              << "time (s): " << report.seconds.mean << " +- " << report.seconds.stddev
              << " (warm-start time included)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification-tree training via moving-horizon differential evolution"};

    detree::ExperimentConfig cfg;
    std::string method = "mh-deoct";
    std::string mode = "normal";
    std::string format = "json";
    std::string save_model_path;
    bool no_cart_in_de = false, no_de_warm = false, no_cart_warm = false;

    app.add_option("--data", cfg.data_path, "CSV file with a header row")->required();
    app.add_option("--label-col", cfg.schema.label_column, "name of the label column")
        ->required();
    app.add_option("--categorical-cols", cfg.schema.categorical_columns,
                   "names of categorical columns")
        ->delimiter(',');
    app.add_option("--method", method, "cart | deoct | mh-deoct | oracle-d1 | oracle-d2");
    app.add_option("--depth", cfg.depth, "tree depth D");
    app.add_option("--mh-depth", cfg.mh_depth, "moving-horizon depth (0 = auto)");
    app.add_option("--alpha", cfg.alpha, "complexity penalty");
    app.add_flag("--tune", cfg.tune, "tune alpha on a validation split");
    app.add_option("--alpha-grid", cfg.alpha_grid,
                   "explicit alpha grid for tuning (default: 21 points, alpha/n in [0,0.05])")
        ->delimiter(',');
    app.add_option("--nmin", cfg.n_min, "minimum non-empty leaf size");
    app.add_option("--mode", mode, "normal (N=100, G=600) | long (N=200, G=4000)");
    app.add_option("--pop", cfg.population, "population size override");
    app.add_option("--gens", cfg.generations, "generation count override");
    app.add_option("--cr", cfg.crossover_rate, "crossover probability");
    app.add_option("--reps", cfg.repetitions, "repetition count");
    app.add_option("--seed", cfg.base_seed, "base seed; repetition i uses base+i");
    app.add_option("--workers", cfg.workers, "fitness worker count (0 = hardware)");
    app.add_option("--stride", cfg.n_stride, "samples per evaluation stride");
    app.add_option("--train-fraction", cfg.train_fraction, "training fraction");
    app.add_option("--validation-fraction", cfg.validation_fraction,
                   "validation fraction (tuning defaults to 0.50/0.25/0.25)");
    app.add_option("--out", cfg.out_path, "report file path");
    app.add_option("--format", format, "json | csv");
    app.add_option("--save-model", save_model_path,
                   "write the best repetition's model artifact to this file");
    app.add_flag("--no-cart-in-de", no_cart_in_de, "disable the CART warm start inside DE");
    app.add_flag("--no-de-warm", no_de_warm, "disable the global DEOCT warm-start pool");
    app.add_flag("--no-cart-warm", no_cart_warm, "disable the global CART warm-start pool");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        cfg.method = detree::method_from_name(method);
        if (mode == "long")
            cfg.mode = detree::DeMode::long_run;
        else if (mode != "normal")
            throw detree::ConfigError("unknown mode: " + mode);
        if (format == "csv")
            cfg.format = detree::ReportFormat::csv;
        else if (format != "json")
            throw detree::ConfigError("unknown format: " + format);
        cfg.warm_start.cart_in_de = !no_cart_in_de;
        cfg.warm_start.de_warm = !no_de_warm;
        cfg.warm_start.cart_warm = !no_cart_warm;
        if (!cfg.alpha_grid.empty()) cfg.tune = true;
        if (cfg.tune && cfg.method == detree::Method::oracle_d1)
            throw detree::ConfigError("oracle-d1 is not tunable");
        if (const char* env = std::getenv("DETREE_WORKERS"))
            cfg.workers = std::atoi(env);

        const detree::ExperimentOutput output = detree::run_experiment_with_model(cfg);
        print_summary(output.report);
        if (!cfg.out_path.empty()) {
            detree::emit_report(output.report, cfg.out_path, cfg.format);
            std::cout << "report written to " << cfg.out_path << "\n";
        }
        if (!save_model_path.empty()) {
            if (!output.best_model)
                throw detree::ConfigError("--save-model is not available for tuned runs");
            detree::save_model(save_model_path, output.best_model->tree,
                               output.best_model->encoder);
            std::cout << "model written to " << save_model_path << "\n";
        }
        return 0;
    } catch (const detree::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const detree::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const detree::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
