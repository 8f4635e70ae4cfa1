// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line plus indented detail. Run everything with no
// arguments or one criterion with --criterion N.
//
// Datasets live in data/ (see tools/prepare_datasets.py). Three of the
// benchmark datasets (hayes_roth, seeds, banknote) ship with UCI only; the
// criteria that name them run every part whose file exists and fail with an
// explicit reason for the missing parts. Dropping the official UCI files
// into data/uci/ and re-running the preparation script completes them.

#include <sys/stat.h>

#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "detree/de.hpp"
#include "detree/experiment.hpp"
#include "detree/greedy.hpp"
#include "detree/mh.hpp"
#include "detree/rng.hpp"

using namespace detree;

namespace {

std::string g_data_dir = DETREE_DATA_DIR;
long long g_elitism_violations = 0;  // tallied by every criterion that runs DE

struct DataSpec {
    std::string name;
    std::string file;
    TableSchema schema;
};

const std::vector<std::string> kCells = {"tl", "tm", "tr", "ml", "mm", "mr", "bl", "bm", "br"};

DataSpec spec_of(const std::string& name) {
    if (name == "iris") return {"iris", "iris.csv", {"class", {}}};
    if (name == "wine") return {"wine", "wine.csv", {"class", {}}};
    if (name == "breast_cancer") return {"breast_cancer", "breast_cancer.csv", {"class", {}}};
    if (name == "digits") return {"digits", "digits.csv", {"class", {}}};
    if (name == "balance_scale") return {"balance_scale", "balance_scale.csv", {"class", {}}};
    if (name == "tic_tac_toe") return {"tic_tac_toe", "tic_tac_toe.csv", {"class", kCells}};
    if (name == "hayes_roth") return {"hayes_roth", "hayes_roth.csv", {"class", {}}};
    if (name == "seeds") return {"seeds", "seeds.csv", {"class", {}}};
    if (name == "banknote") return {"banknote", "banknote.csv", {"class", {}}};
    throw std::runtime_error("unknown dataset " + name);
}

bool dataset_available(const DataSpec& spec) {
    struct stat st {};
    return ::stat((g_data_dir + "/" + spec.file).c_str(), &st) == 0;
}

struct Prepared {
    Dataset train;
    Dataset test;
    ThresholdSets thresholds;
};

Prepared prepare(const RawTable& raw, std::uint64_t seed) {
    SplitSpec split_spec;
    split_spec.train_fraction = 0.75;
    split_spec.seed = seed;
    const SplitIndices idx = split_indices(raw.n(), split_spec);
    Prepared out;
    EncodedTrain train = encode_and_scale(raw.subset(idx.train));
    out.test = train.encoder.apply(raw.subset(idx.test));
    out.train = std::move(train.data);
    out.thresholds = build_threshold_sets(out.train);
    return out;
}

RawTable load(const DataSpec& spec) {
    return load_csv(g_data_dir + "/" + spec.file, spec.schema);
}

double train_accuracy(const TreeParams& tree, const Dataset& train) {
    return accuracy_percent(tree, train);
}

long long tally_history(std::span<const double> history) {
    long long violations = 0;
    for (std::size_t g = 1; g < history.size(); ++g)
        if (history[g] > history[g - 1]) ++violations;
    g_elitism_violations += violations;
    return violations;
}

struct Line {
    bool ok = true;
    std::vector<std::string> details;

    void note(const std::string& text) { details.push_back(text); }
    void check(bool condition, const std::string& text) {
        ok = ok && condition;
        details.push_back(std::string(condition ? "ok   " : "FAIL ") + text);
    }
    void blocked(const std::string& text) {
        ok = false;
        details.push_back("FAIL " + text);
    }
};

std::string fmt(double v, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

using Clock = std::chrono::steady_clock;
double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// C1: batched fitness equals the naive oracle, for every stride and worker
// count, on 200 random individuals per depth and dataset.
// ---------------------------------------------------------------------------
Line criterion1() {
    Line line;
    const auto t0 = Clock::now();
    const std::vector<std::string> names = {"iris", "wine", "breast_cancer",
                                            "balance_scale", "tic_tac_toe"};
    RngStream rng(20240601);
    long long comparisons = 0;
    bool all_equal = true;
    for (const auto& name : names) {
        const DataSpec spec = spec_of(name);
        const RawTable raw = load(spec);
        const auto [ds, encoder] = encode_and_scale(raw);
        if (ds.n > 1000) {
            line.blocked(name + " exceeds the 1000-sample bound");
            continue;
        }
        const ThresholdSets th = build_threshold_sets(ds);
        for (const int depth : {2, 4, 8}) {
            const int sb = (1 << depth) - 1;
            std::vector<Individual> members;
            for (int r = 0; r < 200; ++r) {
                Individual ind;
                ind.genes.resize(static_cast<std::size_t>(2 * sb));
                for (int q = 0; q < sb; ++q)
                    ind.genes[q] = rng.next_unit() * (ds.p + 1);
                for (int q = sb; q < 2 * sb; ++q) ind.genes[q] = rng.next_unit();
                members.push_back(clamp(std::move(ind), ds.p));
            }
            std::vector<double> expected;
            expected.reserve(members.size());
            for (const auto& member : members)
                expected.push_back(
                    naive_fitness_oracle(decode(member, th, ds.p), ds, 0.5, 2));
            for (const int stride : {1, 7, 32}) {
                for (const int workers : {1, 4}) {
                    EvalConfig cfg;
                    cfg.depth = depth;
                    cfg.alpha = 0.5;
                    cfg.n_min = 2;
                    cfg.n_stride = stride;
                    cfg.workers = workers;
                    const std::vector<double> got = evaluate_population(members, ds, th, cfg);
                    for (std::size_t r = 0; r < members.size(); ++r) {
                        ++comparisons;
                        if (got[r] != expected[r]) all_equal = false;
                    }
                }
            }
        }
    }
    line.check(all_equal, "batched == naive on " + std::to_string(comparisons) +
                              " (individual, stride, workers) fitness values, exactly");
    const double seconds = elapsed(t0);
    line.check(seconds < 60.0, "runtime " + fmt(seconds, 1) + " s < 60 s");
    return line;
}

// ---------------------------------------------------------------------------
// C2: codec round-trip and totality.
// ---------------------------------------------------------------------------
Line criterion2() {
    Line line;
    RngStream rng(20240602);
    const RawTable raw = load(spec_of("wine"));
    const auto [ds, encoder] = encode_and_scale(raw);
    const ThresholdSets th = build_threshold_sets(ds);

    for (const int depth : {1, 2, 3}) {
        int exact = 0;
        for (int round = 0; round < 1000; ++round) {
            TreeParams tree = TreeParams::artificial(depth);
            for (int t = 0; t < tree.branch_count(); ++t) {
                const int a = static_cast<int>(rng.next_below(ds.p + 1));
                if (a == 0) continue;
                tree.a[t] = a;
                tree.b[t] = th.beta[a - 1][rng.next_below(th.beta[a - 1].size())];
            }
            if (decode(encode(tree, th), th, ds.p).same_structure(tree)) ++exact;
        }
        line.check(exact == 1000,
                   "depth " + std::to_string(depth) + ": 1000/1000 exact round-trips");
    }

    const int sb = 7;
    int total_ok = 0;
    for (int round = 0; round < 100000; ++round) {
        Individual ind;
        ind.genes.resize(2 * sb);
        for (int q = 0; q < sb; ++q) ind.genes[q] = (rng.next_unit() - 0.1) * (ds.p + 3);
        for (int q = sb; q < 2 * sb; ++q) ind.genes[q] = rng.next_unit() * 1.5 - 0.25;
        const TreeParams tree = decode(clamp(std::move(ind), ds.p), th, ds.p);
        bool valid = true;
        for (int t = 0; t < sb; ++t) {
            valid = valid && tree.a[t] >= 0 && tree.a[t] <= ds.p;
            valid = valid && tree.b[t] >= 0.0 && tree.b[t] <= 1.0;
            if (tree.a[t] == 0) valid = valid && tree.b[t] == 0.0;
        }
        if (valid) ++total_ok;
    }
    line.check(total_ok == 100000, "decode total on 100000 random clamped vectors");
    return line;
}

// ---------------------------------------------------------------------------
// C3: depth-1 DE reaches the exhaustive optimum in >= 9/10 seeds.
// ---------------------------------------------------------------------------
Line criterion3() {
    Line line;
    const auto t0 = Clock::now();
    const std::vector<std::string> named = {"iris", "hayes_roth", "seeds", "banknote"};
    const std::vector<std::string> extra = {"wine", "balance_scale"};

    auto run_one = [&](const std::string& name, bool required) {
        const DataSpec spec = spec_of(name);
        if (!dataset_available(spec)) {
            if (required)
                line.blocked(name + ": dataset unavailable in this environment "
                                    "(UCI original required, see data/uci/)");
            return;
        }
        const RawTable raw = load(spec);
        int hits = 0;
        for (int rep = 0; rep < 10; ++rep) {
            const Prepared data = prepare(raw, 1000 + rep);
            const auto best = best_split_misclass(data.train, data.thresholds);
            const long long optimum =
                best ? best->loss
                     : objective(TreeParams::artificial(1), data.train, 0.0, 1).misclassified;
            EvalConfig eval;
            eval.depth = 1;
            DeConfig de = DeConfig::normal(derive_seed(1000 + rep, "de"));
            const DeResult result = run_deoct(data.train, data.thresholds, 1, eval, de, {});
            tally_history(result.history);
            const long long reached =
                objective(result.best_tree, data.train, 0.0, 1).misclassified;
            if (reached == optimum) ++hits;
        }
        std::ostringstream os;
        os << name << ": optimum reached in " << hits << "/10 seeds";
        if (required)
            line.check(hits >= 9, os.str());
        else
            line.note("info " + os.str() + " [supplementary]");
    };

    for (const auto& name : named) run_one(name, true);
    for (const auto& name : extra) run_one(name, false);
    const double seconds = elapsed(t0);
    line.check(seconds < 300.0, "runtime " + fmt(seconds, 1) + " s < 5 min");
    return line;
}

// ---------------------------------------------------------------------------
// C4: exact depth-2 training accuracy reproduces the published depth-2
// global-optimum values within +-0.8 pp over 10 random 75/25 splits.
// ---------------------------------------------------------------------------
struct Anchor {
    std::string name;
    double published;
    bool required;  // spec-named dataset
    bool asserted;  // wine is informational: its published value is not
                    // reproducible from the public UCI file (see README)
};

double mean_exact_depth2(const RawTable& raw, int reps) {
    double sum = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const Prepared data = prepare(raw, 1000 + rep);
        const TreeParams tree = exact_depth2(data.train, data.thresholds, 0.0, 1);
        sum += train_accuracy(tree, data.train);
    }
    return sum / reps;
}

Line criterion4() {
    Line line;
    const auto t0 = Clock::now();
    const std::vector<Anchor> anchors = {
        {"iris", 96.25, true, true},
        {"hayes_roth", 63.43, true, true},
        {"banknote", 92.88, true, true},
        {"seeds", 95.10, true, true},
        {"balance_scale", 72.74, false, true},
        {"wine", 97.67, false, false},
    };
    for (const auto& anchor : anchors) {
        const DataSpec spec = spec_of(anchor.name);
        if (!dataset_available(spec)) {
            if (anchor.required)
                line.blocked(anchor.name + ": dataset unavailable in this environment "
                                           "(UCI original required, see data/uci/)");
            continue;
        }
        const double mean = mean_exact_depth2(load(spec), 10);
        const double gap = mean - anchor.published;
        std::ostringstream os;
        os << anchor.name << ": mean " << fmt(mean) << " vs published " << fmt(anchor.published)
           << " (gap " << fmt(gap) << " pp)";
        if (anchor.asserted)
            line.check(std::abs(gap) <= 0.8,
                       os.str() + (anchor.required ? "" : " [supplementary]"));
        else
            line.note("info " + os.str() + " [informational]");
    }
    const double seconds = elapsed(t0);
    line.check(seconds < 600.0, "runtime " + fmt(seconds, 1) + " s < 10 min");
    return line;
}

// ---------------------------------------------------------------------------
// C5: MH-DEOCT stays within 0.6 pp (normal) / 0.3 pp (long) of the exact
// depth-2 optimum on the criterion-4 datasets.
// ---------------------------------------------------------------------------
Line criterion5() {
    Line line;
    const std::vector<std::string> named = {"iris", "hayes_roth", "banknote", "seeds"};
    const std::vector<std::string> extra = {"balance_scale", "wine"};

    auto run_one = [&](const std::string& name, bool required) {
        const DataSpec spec = spec_of(name);
        if (!dataset_available(spec)) {
            if (required)
                line.blocked(name + ": dataset unavailable in this environment "
                                    "(UCI original required, see data/uci/)");
            return;
        }
        const RawTable raw = load(spec);
        const double oracle = mean_exact_depth2(raw, 10);
        for (const bool long_mode : {false, true}) {
            double sum = 0.0;
            for (int rep = 0; rep < 10; ++rep) {
                const Prepared data = prepare(raw, 1000 + rep);
                MhConfig cfg;
                cfg.depth = 2;
                cfg.mh_depth = 2;
                cfg.oct.depth = 2;
                const std::uint64_t seed = derive_seed(1000 + rep, "de");
                cfg.de = long_mode ? DeConfig::long_run(seed) : DeConfig::normal(seed);
                const MhResult result = run_mh_deoct(data.train, data.thresholds, cfg);
                g_elitism_violations += result.report.elitism_violations;
                sum += train_accuracy(result.tree, data.train);
            }
            const double mh_mean = sum / 10.0;
            const double gap = oracle - mh_mean;
            const double bound = long_mode ? 0.3 : 0.6;
            std::ostringstream os;
            os << name << (long_mode ? " (long)" : " (normal)") << ": mh " << fmt(mh_mean)
               << " vs oracle " << fmt(oracle) << " (gap " << fmt(gap) << " pp, bound "
               << fmt(bound, 1) << ")";
            if (required)
                line.check(gap <= bound, os.str());
            else
                line.note(std::string(gap <= bound ? "ok   " : "info ") + os.str() +
                          " [supplementary]");
        }
    };

    for (const auto& name : named) run_one(name, true);
    for (const auto& name : extra) run_one(name, false);
    return line;
}

// ---------------------------------------------------------------------------
// C6: MH-DEOCT vs CART at depths 3 and 4 across the small-dataset suite.
// ---------------------------------------------------------------------------
Line criterion6() {
    Line line;
    const auto t0 = Clock::now();
    const std::vector<std::string> names = {"iris",          "wine",        "breast_cancer",
                                            "balance_scale", "tic_tac_toe", "digits"};
    int pairs = 0, mh_wins = 0;
    double depth4_improvement = 0.0;
    int depth4_count = 0;
    for (const auto& name : names) {
        const RawTable raw = load(spec_of(name));
        for (const int depth : {3, 4}) {
            double mh_sum = 0.0, cart_sum = 0.0;
            for (int rep = 0; rep < 10; ++rep) {
                const Prepared data = prepare(raw, 1000 + rep);
                MhConfig cfg;
                cfg.depth = depth;
                cfg.mh_depth = 3;
                cfg.oct.depth = depth;
                cfg.de = DeConfig::normal(derive_seed(1000 + rep, "de"));
                const MhResult mh = run_mh_deoct(data.train, data.thresholds, cfg);
                g_elitism_violations += mh.report.elitism_violations;
                mh_sum += train_accuracy(mh.tree, data.train);
                const TreeParams cart = cart_train(data.train, depth, 1, Impurity::gini);
                cart_sum += train_accuracy(cart, data.train);
            }
            const double mh_mean = mh_sum / 10.0;
            const double cart_mean = cart_sum / 10.0;
            ++pairs;
            if (mh_mean >= cart_mean) ++mh_wins;
            if (depth == 4) {
                depth4_improvement += mh_mean - cart_mean;
                ++depth4_count;
            }
            line.note("info " + name + " depth " + std::to_string(depth) + ": mh " +
                      fmt(mh_mean) + " vs cart " + fmt(cart_mean) + " (" +
                      fmt(mh_mean - cart_mean) + " pp)");
        }
    }
    line.check(mh_wins * 10 >= pairs * 9, "mh >= cart on " + std::to_string(mh_wins) + "/" +
                                              std::to_string(pairs) + " (dataset, depth) pairs");
    const double mean_gain = depth4_improvement / depth4_count;
    line.check(mean_gain >= 0.8,
               "mean depth-4 improvement " + fmt(mean_gain) + " pp >= 0.8 pp");
    const double seconds = elapsed(t0);
    line.check(seconds < 1800.0, "runtime " + fmt(seconds, 1) + " s < 30 min");
    return line;
}

// ---------------------------------------------------------------------------
// C7: warm-start ablation at depth 8.
// ---------------------------------------------------------------------------
Line criterion7() {
    Line line;
    const std::vector<std::string> names = {"balance_scale", "tic_tac_toe", "digits"};
    double with_ws = 0.0, without_ws = 0.0, mh_plain = 0.0, cart_plain = 0.0;
    for (const auto& name : names) {
        const RawTable raw = load(spec_of(name));
        double ds_with = 0.0, ds_without = 0.0, ds_mh = 0.0, ds_cart = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const Prepared data = prepare(raw, 1000 + rep);
            EvalConfig eval;
            eval.depth = 8;
            const std::uint64_t seed = derive_seed(1000 + rep, "de");

            const std::vector<TreeParams> cart_warm{
                cart_train(data.train, 8, 1, Impurity::gini)};
            const DeResult warm = run_deoct(data.train, data.thresholds, 8, eval,
                                            DeConfig::normal(seed), cart_warm);
            tally_history(warm.history);
            ds_with += train_accuracy(warm.best_tree, data.train);

            const DeResult cold =
                run_deoct(data.train, data.thresholds, 8, eval, DeConfig::normal(seed), {});
            tally_history(cold.history);
            ds_without += train_accuracy(cold.best_tree, data.train);

            MhConfig mh_cfg;
            mh_cfg.depth = 8;
            mh_cfg.mh_depth = 3;
            mh_cfg.oct.depth = 8;
            mh_cfg.de = DeConfig::normal(seed);
            mh_cfg.warm_start = {false, false, false};
            const MhResult mh = run_mh_deoct(data.train, data.thresholds, mh_cfg);
            g_elitism_violations += mh.report.elitism_violations;
            ds_mh += train_accuracy(mh.tree, data.train);

            ds_cart += train_accuracy(cart_warm[0], data.train);
        }
        with_ws += ds_with / 10.0;
        without_ws += ds_without / 10.0;
        mh_plain += ds_mh / 10.0;
        cart_plain += ds_cart / 10.0;
        line.note("info " + name + ": deoct+ws " + fmt(ds_with / 10.0) + ", deoct " +
                  fmt(ds_without / 10.0) + ", mh(no ws) " + fmt(ds_mh / 10.0) + ", cart " +
                  fmt(ds_cart / 10.0));
    }
    const double n = static_cast<double>(names.size());
    line.check(with_ws / n - without_ws / n >= 1.0,
               "CART warm start lifts DEOCT by " + fmt(with_ws / n - without_ws / n) +
                   " pp >= 1 pp at depth 8");
    line.check(mh_plain / n > cart_plain / n,
               "MH-DEOCT without warm starts (" + fmt(mh_plain / n) + ") beats CART (" +
                   fmt(cart_plain / n) + ")");
    return line;
}

// ---------------------------------------------------------------------------
// C8: elitism. Dedicated battery plus the tally from every criterion run in
// this process.
// ---------------------------------------------------------------------------
Line criterion8() {
    Line line;
    const std::vector<std::string> names = {"iris", "wine", "balance_scale"};
    long long local = 0;
    int runs = 0;
    for (const auto& name : names) {
        const RawTable raw = load(spec_of(name));
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const Prepared data = prepare(raw, seed);
            EvalConfig eval;
            eval.depth = 3;
            const DeResult de = run_deoct(data.train, data.thresholds, 3, eval,
                                          DeConfig::normal(derive_seed(seed, "de")), {});
            local += tally_history(de.history);
            ++runs;

            MhConfig cfg;
            cfg.depth = 3;
            cfg.mh_depth = 2;
            cfg.oct.depth = 3;
            cfg.de = DeConfig::normal(derive_seed(seed, "de"));
            const MhResult mh = run_mh_deoct(data.train, data.thresholds, cfg);
            local += mh.report.elitism_violations;
            g_elitism_violations += mh.report.elitism_violations;
            ++runs;
        }
    }
    line.check(local == 0, "0 violations across " + std::to_string(runs) +
                               " dedicated battery runs (exact)");
    line.check(g_elitism_violations == 0,
               "0 violations across every DE history logged by this process");
    return line;
}

// ---------------------------------------------------------------------------
// C9: alpha >= n collapses both optimizers to the no-split tree.
// ---------------------------------------------------------------------------
Line criterion9() {
    Line line;
    const std::vector<std::string> names = {"iris", "wine", "breast_cancer",
                                            "balance_scale", "tic_tac_toe"};
    for (const auto& name : names) {
        const RawTable raw = load(spec_of(name));
        const Prepared data = prepare(raw, 4242);
        const double alpha = 2.0 * data.train.n;

        long long majority = 0;
        std::vector<long long> counts(data.train.k, 0);
        for (int y : data.train.y) ++counts[y - 1];
        for (long long c : counts) majority = std::max(majority, c);
        const double expected = static_cast<double>(data.train.n - majority);

        EvalConfig eval;
        eval.depth = 2;
        eval.alpha = alpha;
        const DeResult de = run_deoct(data.train, data.thresholds, 2, eval,
                                      DeConfig::normal(derive_seed(4242, "de")), {});
        tally_history(de.history);
        const ObjectiveReport de_report = objective(de.best_tree, data.train, alpha, 1);
        line.check(de_report.active_splits == 0 && de_report.fitness == expected,
                   name + ": deoct 0 splits, fitness " + fmt(de_report.fitness, 0) +
                       " == n - max class count");

        MhConfig cfg;
        cfg.depth = 2;
        cfg.mh_depth = 2;
        cfg.oct.depth = 2;
        cfg.oct.alpha = alpha;
        cfg.de = DeConfig::normal(derive_seed(4242, "de"));
        const MhResult mh = run_mh_deoct(data.train, data.thresholds, cfg);
        g_elitism_violations += mh.report.elitism_violations;
        const ObjectiveReport mh_report = objective(mh.tree, data.train, alpha, 1);
        line.check(mh_report.active_splits == 0 && mh_report.fitness == expected,
                   name + ": mh-deoct 0 splits, fitness " + fmt(mh_report.fitness, 0) +
                       " == n - max class count");
    }
    return line;
}

// ---------------------------------------------------------------------------
// C10: reruns with identical config and seed are bit-identical. Wall-clock
// fields are excluded: they measure the machine, not the computation.
// ---------------------------------------------------------------------------
Line criterion10() {
    Line line;
    auto stripped = [](const RunReport& report) {
        nlohmann::json doc = nlohmann::json::parse(report_to_json(report));
        for (auto& row : doc["repetitions"]) row.erase("seconds");
        doc["aggregate"].erase("seconds");
        return doc.dump();
    };

    ExperimentConfig cfg;
    cfg.data_path = g_data_dir + "/iris.csv";
    cfg.schema.label_column = "class";
    cfg.method = Method::mh_deoct;
    cfg.depth = 2;
    cfg.repetitions = 2;
    cfg.base_seed = 77;

    const std::string first = stripped(run_experiment(cfg));
    const std::string second = stripped(run_experiment(cfg));
    line.check(first == second, "mh-deoct report bit-identical across reruns "
                                "(wall-clock fields excluded)");

    cfg.method = Method::deoct;
    cfg.depth = 3;
    cfg.workers = 3;
    const std::string third = stripped(run_experiment(cfg));
    cfg.workers = 1;
    const std::string fourth = stripped(run_experiment(cfg));
    line.check(third == fourth, "deoct report bit-identical across worker counts");
    return line;
}

struct Criterion {
    int id;
    const char* title;
    Line (*run)();
};

const std::vector<Criterion> kCriteria = {
    {1, "batched-fitness oracle equivalence", criterion1},
    {2, "codec round-trip and totality", criterion2},
    {3, "depth-1 optimality", criterion3},
    {4, "depth-2 global reproduction", criterion4},
    {5, "mh-deoct near-optimality at depth 2", criterion5},
    {6, "greedy-gap direction at depths 3-4", criterion6},
    {7, "warm-start ablation at depth 8", criterion7},
    {8, "elitism invariant", criterion8},
    {9, "alpha-degeneracy", criterion9},
    {10, "determinism", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            selected = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--data-dir") == 0 && i + 1 < argc) g_data_dir = argv[++i];
    }

    bool all_ok = true;
    for (const auto& criterion : kCriteria) {
        if (selected != 0 && criterion.id != selected) continue;
        Line line;
        try {
            line = criterion.run();
        } catch (const std::exception& e) {
            line.blocked(std::string("exception: ") + e.what());
        }
        all_ok = all_ok && line.ok;
        std::cout << (line.ok ? "[PASS]" : "[FAIL]") << " C" << criterion.id << ": "
                  << criterion.title << "\n";
        for (const auto& detail : line.details) std::cout << "       " << detail << "\n";
        std::cout.flush();
    }
    return all_ok ? 0 : 1;
}
