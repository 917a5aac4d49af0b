// fairrank command-line front end: dataset generation, training runs,
// hyperparameter sweeps, fairness audits and plot-ready ROC exports.
//
// Every mode reads a JSON config (--config), writes its artifacts under
// --out and exits 0 only if all requested artifacts were written. Errors
// print a single machine-parsable line on stderr.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairrank/constraints.hpp"
#include "fairrank/dataset.hpp"
#include "fairrank/error.hpp"
#include "fairrank/metrics.hpp"
#include "fairrank/model.hpp"
#include "fairrank/report.hpp"
#include "fairrank/rng.hpp"
#include "fairrank/synth.hpp"
#include "fairrank/tabular.hpp"
#include "fairrank/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fairrank;

namespace {

// Seed stream tags for dataset materialization and sweeps.
enum : std::uint64_t {
    kTrainValGenStream = 10,
    kTestGenStream = 11,
    kTestSplitStream = 12,
    kTrainValSplitStream = 13,
    kSweepStreamBase = 1000,
};

struct CliArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

std::uint64_t require_seed(const json& cfg, const CliArgs& args) {
    if (args.seed.has_value()) return *args.seed;
    if (cfg.contains("seed")) return cfg["seed"].get<std::uint64_t>();
    throw ConfigError("a seed is mandatory: pass --seed or set \"seed\" in the config");
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    out << content;
    out.close();
    if (!out || !fs::exists(path))
        throw ConfigError("failed writing artifact: " + path.string());
}

std::string format_double(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

// Schema of the 4-column files written by the synth mode.
TabularSchema synth_schema() {
    TabularSchema schema;
    schema.label_column = "y";
    schema.label_positive_values = {"1"};
    schema.label_negative_values = {"-1"};
    schema.group_column = "z";
    schema.group1_values = {"1"};
    schema.group0_values = {"0"};
    schema.numeric_columns = {"x1", "x2"};
    schema.standardize = false;
    return schema;
}

std::string dataset_to_csv(const Dataset& data) {
    std::string out;
    std::vector<std::string> header;
    for (std::size_t c = 0; c < data.dim(); ++c) header.push_back("x" + std::to_string(c + 1));
    header.push_back("y");
    header.push_back("z");
    write_csv_row(out, header);
    std::vector<std::string> row;
    for (std::size_t i = 0; i < data.size(); ++i) {
        row.clear();
        for (double x : data[i].features) row.push_back(format_double(x));
        row.push_back(std::to_string(data[i].label));
        row.push_back(std::to_string(data[i].group));
        write_csv_row(out, row);
    }
    return out;
}

Dataset generate_synthetic(const json& dataset_cfg, std::size_t n, std::uint64_t seed) {
    const std::string generator = dataset_cfg.at("generator").get<std::string>();
    const double q1 = dataset_cfg.value("q1", 0.5);
    if (generator == "square") {
        SquareConfig cfg;
        cfg.n = n;
        cfg.q1 = q1;
        cfg.seed = seed;
        return gen_square(cfg);
    }
    if (generator == "disk") {
        DiskConfig cfg;
        cfg.n = n;
        cfg.q1 = q1;
        cfg.seed = seed;
        return gen_disk(cfg);
    }
    throw ConfigError("unknown generator '" + generator + "' (square or disk)");
}

struct DataBundle {
    Dataset train;
    Dataset validation;
    std::optional<Dataset> test;
    std::optional<EncodingReport> encoding;  // csv sources only
};

std::pair<Dataset, Dataset> apply_split(const Dataset& pool, const json& cfg,
                                        std::uint64_t seed) {
    const json split_cfg = cfg.value("split", json::object());
    const double fraction = split_cfg.value("validation_fraction", 0.4);
    const bool stratified = split_cfg.value("stratified", false);
    const std::uint64_t split_seed = Rng::stream(seed, kTrainValSplitStream).next_u64();
    return stratified ? split_stratified(pool, fraction, split_seed)
                      : split(pool, fraction, split_seed);
}

DataBundle materialize_data(const json& cfg, std::uint64_t seed) {
    const json& dataset_cfg = cfg.at("dataset");
    const std::string type = dataset_cfg.value("type", "synthetic");
    DataBundle bundle;

    if (type == "synthetic") {
        const auto n = dataset_cfg.at("n_train_val").get<std::size_t>();
        const Dataset pool = generate_synthetic(
            dataset_cfg, n, Rng::stream(seed, kTrainValGenStream).next_u64());
        std::tie(bundle.train, bundle.validation) = apply_split(pool, cfg, seed);
        if (dataset_cfg.contains("n_test")) {
            bundle.test = generate_synthetic(
                dataset_cfg, dataset_cfg["n_test"].get<std::size_t>(),
                Rng::stream(seed, kTestGenStream).next_u64());
        }
        return bundle;
    }

    if (type == "csv") {
        const auto path = dataset_cfg.at("path").get<std::string>();
        const TabularSchema schema =
            TabularSchema::from_json_file(dataset_cfg.at("schema").get<std::string>());
        auto rows = read_csv(path, schema.separator);
        if (rows.empty()) throw SchemaError("file has no header row: " + path);

        if (dataset_cfg.contains("test_fraction")) {
            // Split raw rows first so encoding statistics never see the
            // test portion.
            const double fraction = dataset_cfg["test_fraction"].get<double>();
            if (!(fraction >= 0.0 && fraction < 1.0))
                throw ConfigError("test_fraction must lie in [0,1)");
            std::vector<std::vector<std::string>> body(rows.begin() + 1, rows.end());
            Rng rng(Rng::stream(seed, kTestSplitStream).next_u64());
            for (std::size_t i = body.size(); i > 1; --i)
                std::swap(body[i - 1], body[rng.uniform_below(i)]);
            const auto n_test =
                static_cast<std::size_t>(fraction * static_cast<double>(body.size()));
            std::vector<std::vector<std::string>> test_rows{rows.front()};
            std::vector<std::vector<std::string>> pool_rows{rows.front()};
            test_rows.insert(test_rows.end(), body.begin(),
                             body.begin() + static_cast<long>(n_test));
            pool_rows.insert(pool_rows.end(), body.begin() + static_cast<long>(n_test),
                             body.end());
            LoadedTable pool = load_rows(pool_rows, schema);
            bundle.encoding = pool.report;
            std::tie(bundle.train, bundle.validation) = apply_split(pool.data, cfg, seed);
            if (n_test > 0)
                bundle.test = load_rows_with(test_rows, schema, *bundle.encoding).data;
            return bundle;
        }

        LoadedTable pool = load_rows(rows, schema);
        bundle.encoding = pool.report;
        std::tie(bundle.train, bundle.validation) = apply_split(pool.data, cfg, seed);
        if (dataset_cfg.contains("test_path")) {
            bundle.test = load_csv_with(dataset_cfg["test_path"].get<std::string>(), schema,
                                        *bundle.encoding)
                              .data;
        }
        return bundle;
    }

    throw ConfigError("unknown dataset type '" + type + "' (synthetic or csv)");
}

void fill_common_train_config(TrainConfig& out, const json& cfg, std::uint64_t seed) {
    const json trainer = cfg.value("trainer", json::object());
    out.n_iter = trainer.value("n_iter", out.n_iter);
    out.batch_size = trainer.value("batch_size", out.batch_size);
    out.pair_budget = trainer.value("pair_budget", out.pair_budget);
    out.val_pair_budget = trainer.value("val_pair_budget", out.val_pair_budget);
    out.adapt_every = trainer.value("adapt_every", out.adapt_every);
    out.dc = trainer.value("dc", out.dc);
    out.lambda_reg = trainer.value("lambda_reg", out.lambda_reg);
    out.temperature = trainer.value("temperature", out.temperature);
    out.bn_momentum = trainer.value("bn_momentum", out.bn_momentum);
    const json model = cfg.value("model", json::object());
    out.depth = model.value("depth", out.depth);
    out.hidden_width = model.value("hidden_width", out.hidden_width);
    out.seed = seed;
}

GammaConstraint resolve_gamma(const json& cfg, const Dataset& train) {
    const json& constraint = cfg.at("constraint");
    if (constraint.contains("gamma")) {
        const auto values = constraint["gamma"].get<std::vector<double>>();
        if (values.size() != 5) throw ConfigError("explicit gamma must have 5 entries");
        GammaConstraint g;
        std::copy(values.begin(), values.end(), g.gamma.begin());
        return g;
    }
    const auto kind = constraint_kind_from_string(constraint.at("kind").get<std::string>());
    return make_named(kind, Rates::from_counts(cell_counts(train)));
}

RocPenaltyConfig resolve_penalty(const json& cfg, double lambda_override = -1.0) {
    const json& rc = cfg.at("roc_constraint");
    RocPenaltyConfig penalty;
    penalty.alpha_h = rc.value("alpha_h", std::vector<double>{});
    penalty.alpha_g = rc.value("alpha_g", std::vector<double>{});
    if (lambda_override >= 0.0) {
        penalty.lambda_h.assign(penalty.alpha_h.size(), lambda_override);
        penalty.lambda_g.assign(penalty.alpha_g.size(), lambda_override);
    } else {
        penalty.lambda_h = rc.value("lambda_h", std::vector<double>{});
        penalty.lambda_g = rc.value("lambda_g", std::vector<double>{});
    }
    penalty.validate();
    if (penalty.m_h() + penalty.m_g() == 0)
        throw ConfigError("roc_constraint needs at least one abscissa");
    return penalty;
}

std::vector<double> audit_alphas(const json& cfg) {
    const json audit = cfg.value("audit", json::object());
    return audit.value("alphas", std::vector<double>{0.125, 0.25, 0.5, 0.75});
}

std::optional<ScanRequest> audit_scan(const json& cfg) {
    const json audit = cfg.value("audit", json::object());
    if (!audit.contains("threshold_scan")) return std::nullopt;
    const json& scan_cfg = audit["threshold_scan"];
    ScanRequest scan;
    const std::string mode = scan_cfg.at("mode").get<std::string>();
    if (mode == "fpr_parity")
        scan.mode = ParityMode::FprParity;
    else if (mode == "fnr_parity")
        scan.mode = ParityMode::FnrParity;
    else
        throw ConfigError("threshold_scan.mode must be fpr_parity or fnr_parity");
    scan.grid = scan_cfg.value("grid", std::vector<double>{});
    if (scan.grid.empty())
        for (int i = 0; i <= 20; ++i) scan.grid.push_back(i / 20.0);
    scan.tol = scan_cfg.value("tol", 0.05);
    return scan;
}

void write_roc_curves(const fs::path& dir, const Dataset& data,
                      std::span<const double> scores) {
    const CellScores cells = CellScores::from_dataset(data, scores);
    for (const auto& curve : standard_roc_curves(cells)) {
        if (curve.h_sample.empty() || curve.g_sample.empty()) continue;
        write_file(dir / (curve.name + ".csv"),
                   roc_curve_csv(EmpiricalCdf(curve.h_sample), EmpiricalCdf(curve.g_sample)));
    }
}

// The dataset a report is computed on: the test part when the config
// defines one, otherwise the training pool reassembled.
const Dataset& report_target(const DataBundle& bundle, Dataset& scratch) {
    if (bundle.test.has_value()) return *bundle.test;
    std::vector<LabeledSample> all(bundle.train.samples());
    all.insert(all.end(), bundle.validation.samples().begin(),
               bundle.validation.samples().end());
    scratch = Dataset(std::move(all), bundle.train.dim());
    return scratch;
}

void write_train_artifacts(const fs::path& out_dir, const json& cfg,
                           const DataBundle& bundle, const TrainResult& result) {
    write_file(out_dir / "checkpoint.json", checkpoint_to_json(result.model));
    write_file(out_dir / "training_log.csv", result.log.to_csv());
    if (bundle.encoding.has_value())
        write_file(out_dir / "encoding.json", bundle.encoding->to_json());

    Dataset scratch;
    const Dataset& target = report_target(bundle, scratch);
    const auto scores = score_dataset(result.model, target);
    const MetricsReport report =
        build_report(target, scores, audit_alphas(cfg), audit_scan(cfg));
    write_file(out_dir / "metrics.json", report.to_json());
    write_roc_curves(out_dir / "roc", target, scores);
}

int run_synth(const json& cfg, const CliArgs& args) {
    const std::uint64_t seed = require_seed(cfg, args);
    const json& dataset_cfg = cfg.at("dataset");
    const Dataset data =
        generate_synthetic(dataset_cfg, dataset_cfg.at("n").get<std::size_t>(), seed);
    write_file(fs::path(args.out_dir) / "dataset.csv", dataset_to_csv(data));
    return 0;
}

int run_train_auc(const json& cfg, const CliArgs& args) {
    const std::uint64_t seed = require_seed(cfg, args);
    const DataBundle bundle = materialize_data(cfg, seed);
    AucTrainConfig train_cfg;
    fill_common_train_config(train_cfg, cfg, seed);
    train_cfg.lambda = cfg.value("trainer", json::object()).value("lambda", 0.0);
    const GammaConstraint gamma = resolve_gamma(cfg, bundle.train);
    const TrainResult result = train_auc(bundle.train, bundle.validation, gamma, train_cfg);
    write_train_artifacts(args.out_dir, cfg, bundle, result);
    return 0;
}

int run_train_roc(const json& cfg, const CliArgs& args) {
    const std::uint64_t seed = require_seed(cfg, args);
    const DataBundle bundle = materialize_data(cfg, seed);
    RocTrainConfig train_cfg;
    fill_common_train_config(train_cfg, cfg, seed);
    train_cfg.dt = cfg.value("trainer", json::object()).value("dt", train_cfg.dt);
    train_cfg.penalty = resolve_penalty(cfg);
    const TrainResult result = train_roc(bundle.train, bundle.validation, train_cfg);
    write_train_artifacts(args.out_dir, cfg, bundle, result);
    return 0;
}

// Scores for audit/roc-export: either a model checkpoint applied to the
// materialized dataset, or a score column of a pre-scored CSV file.
struct ScoredData {
    Dataset data;
    std::vector<double> scores;
};

ScoredData resolve_scored_data(const json& cfg, const CliArgs& args) {
    const std::uint64_t seed = require_seed(cfg, args);
    if (cfg.contains("score_column")) {
        const json& dataset_cfg = cfg.at("dataset");
        if (dataset_cfg.value("type", "csv") != "csv")
            throw ConfigError("score_column requires a csv dataset");
        TabularSchema schema = dataset_cfg.contains("schema")
                                   ? TabularSchema::from_json_file(
                                         dataset_cfg["schema"].get<std::string>())
                                   : synth_schema();
        const auto rows =
            read_csv(dataset_cfg.at("path").get<std::string>(), schema.separator);
        if (rows.empty()) throw SchemaError("file has no header row");
        const std::string score_column = cfg["score_column"].get<std::string>();

        const auto& header = rows.front();
        std::size_t label_idx = header.size(), group_idx = header.size(),
                    score_idx = header.size();
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == schema.label_column) label_idx = i;
            if (header[i] == schema.group_column) group_idx = i;
            if (header[i] == score_column) score_idx = i;
        }
        if (label_idx == header.size() || group_idx == header.size())
            throw SchemaError("label or group column not found");
        if (score_idx == header.size())
            throw SchemaError("score column '" + score_column + "' not found");

        auto in_list = [](const std::vector<std::string>& values, const std::string& v) {
            return std::find(values.begin(), values.end(), v) != values.end();
        };
        std::vector<LabeledSample> samples;
        std::vector<double> scores;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            const auto& row = rows[r];
            if (row.size() != header.size()) continue;
            int label;
            if (in_list(schema.label_positive_values, row[label_idx]))
                label = 1;
            else if (schema.label_negative_values.empty() ||
                     in_list(schema.label_negative_values, row[label_idx]))
                label = -1;
            else
                continue;
            int group;
            if (in_list(schema.group1_values, row[group_idx]))
                group = 1;
            else if (schema.group0_values.empty() ||
                     in_list(schema.group0_values, row[group_idx]))
                group = 0;
            else
                continue;
            char* end = nullptr;
            const double score = std::strtod(row[score_idx].c_str(), &end);
            if (end != row[score_idx].c_str() + row[score_idx].size()) continue;
            samples.push_back({{score}, label, group});  // score doubles as feature
            scores.push_back(score);
        }
        if (samples.empty()) throw SchemaError("no usable scored rows");
        return {Dataset(std::move(samples), 1), std::move(scores)};
    }

    if (!cfg.contains("checkpoint"))
        throw ConfigError("audit needs either a checkpoint or a score_column");
    const MlpScorer model = load_checkpoint(cfg["checkpoint"].get<std::string>());
    const DataBundle bundle = materialize_data(cfg, seed);
    Dataset scratch;
    const Dataset& target = report_target(bundle, scratch);
    std::vector<double> scores = score_dataset(model, target);
    return {target, std::move(scores)};
}

int run_audit(const json& cfg, const CliArgs& args) {
    const ScoredData scored = resolve_scored_data(cfg, args);
    const MetricsReport report =
        build_report(scored.data, scored.scores, audit_alphas(cfg), audit_scan(cfg));
    write_file(fs::path(args.out_dir) / "metrics.json", report.to_json());
    return 0;
}

int run_roc_export(const json& cfg, const CliArgs& args) {
    const ScoredData scored = resolve_scored_data(cfg, args);
    write_roc_curves(fs::path(args.out_dir) / "roc", scored.data, scored.scores);
    return 0;
}

int run_sweep(const json& cfg, const CliArgs& args) {
    const std::uint64_t seed = require_seed(cfg, args);
    const json sweep_cfg = cfg.value("sweep", json::object());
    const std::string mode = sweep_cfg.value("mode", "auc");
    const auto lambdas =
        sweep_cfg.value("lambda", std::vector<double>{0, 0.25, 0.5, 1, 5, 10});
    const auto lambda_regs = sweep_cfg.value(
        "lambda_reg", std::vector<double>{1e-3, 5e-3, 1e-2, 5e-2, 1e-1, 5e-1, 1.0});
    if (lambdas.empty() || lambda_regs.empty())
        throw ConfigError("sweep candidate lists must be nonempty");

    const DataBundle bundle = materialize_data(cfg, seed);

    struct PointResult {
        double lambda, lambda_reg;
        double criterion = std::numeric_limits<double>::quiet_NaN();
        double val_auc = std::numeric_limits<double>::quiet_NaN();
        std::string status = "failed";
        std::string message;
        std::string dir;
    };
    std::vector<PointResult> points;

    std::size_t index = 0;
    for (double lambda : lambdas) {
        for (double lambda_reg : lambda_regs) {
            PointResult point;
            point.lambda = lambda;
            point.lambda_reg = lambda_reg;
            const fs::path dir =
                fs::path(args.out_dir) / "points" / ("point_" + std::to_string(index));
            point.dir = dir.string();
            const std::uint64_t point_seed =
                Rng::stream(seed, kSweepStreamBase + index).next_u64();
            try {
                TrainResult result = [&] {
                    if (mode == "auc") {
                        AucTrainConfig train_cfg;
                        fill_common_train_config(train_cfg, cfg, point_seed);
                        train_cfg.lambda = lambda;
                        train_cfg.lambda_reg = lambda_reg;
                        return train_auc(bundle.train, bundle.validation,
                                         resolve_gamma(cfg, bundle.train), train_cfg);
                    }
                    if (mode == "roc") {
                        RocTrainConfig train_cfg;
                        fill_common_train_config(train_cfg, cfg, point_seed);
                        train_cfg.lambda_reg = lambda_reg;
                        train_cfg.penalty = resolve_penalty(cfg, lambda);
                        return train_roc(bundle.train, bundle.validation, train_cfg);
                    }
                    throw ConfigError("sweep mode must be auc or roc");
                }();

                const auto val_scores = score_dataset(result.model, bundle.validation);
                const CellScores cells =
                    CellScores::from_dataset(bundle.validation, val_scores);
                point.val_auc = auc(EmpiricalCdf(cells.pooled_neg()),
                                    EmpiricalCdf(cells.pooled_pos()));
                point.criterion =
                    mode == "auc"
                        ? l_lambda_criterion(cells, resolve_gamma(cfg, bundle.train), lambda)
                        : l_big_lambda_criterion(cells, resolve_penalty(cfg, lambda));
                point.status = "ok";
                write_train_artifacts(dir, cfg, bundle, result);
            } catch (const Error& e) {
                point.message = e.what();
            }
            points.push_back(std::move(point));
            ++index;
        }
    }

    std::string ranking = "index,lambda,lambda_reg,val_criterion,val_auc,status,dir\n";
    long best = -1;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        ranking += std::to_string(i) + "," + format_double(p.lambda) + "," +
                   format_double(p.lambda_reg) + "," + format_double(p.criterion) + "," +
                   format_double(p.val_auc) + "," + p.status + "," + p.dir + "\n";
        if (p.status == "ok" &&
            (best < 0 || p.criterion > points[static_cast<std::size_t>(best)].criterion))
            best = static_cast<long>(i);
    }
    write_file(fs::path(args.out_dir) / "sweep_ranking.csv", ranking);
    if (best < 0) throw TrainError("every sweep point failed");

    const auto& winner = points[static_cast<std::size_t>(best)];
    json best_json = {{"index", best},
                      {"lambda", winner.lambda},
                      {"lambda_reg", winner.lambda_reg},
                      {"val_criterion", winner.criterion},
                      {"val_auc", winner.val_auc},
                      {"dir", winner.dir}};
    write_file(fs::path(args.out_dir) / "best.json", best_json.dump(2));
    return 0;
}

const char* error_category(const Error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "config";
    if (dynamic_cast<const StatError*>(&e)) return "statistic";
    if (dynamic_cast<const ShapeError*>(&e)) return "shape";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const SchemaError*>(&e)) return "schema";
    if (dynamic_cast<const TrainError*>(&e)) return "training";
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fair bipartite ranking toolkit"};
    app.require_subcommand(1);

    CliArgs args;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", args.config_path, "JSON run configuration")->required();
        cmd->add_option("--out", args.out_dir, "output directory")->required();
        cmd->add_option("--seed", seed_flag, "seed override (otherwise config \"seed\")")
            ->each([&](const std::string&) { seed_given = true; });
    };

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    CLI::App* train_auc_cmd =
        app.add_subcommand("train-auc", "train under an AUC-based fairness constraint");
    CLI::App* train_roc_cmd =
        app.add_subcommand("train-roc", "train under pointwise ROC-based constraints");
    CLI::App* audit = app.add_subcommand("audit", "fairness audit of a scored dataset");
    CLI::App* roc_export =
        app.add_subcommand("roc-export", "export plot-ready ROC curve CSVs");
    CLI::App* sweep = app.add_subcommand("sweep", "hyperparameter grid sweep");
    for (CLI::App* cmd : {synth, train_auc_cmd, train_roc_cmd, audit, roc_export, sweep})
        add_common(cmd);

    CLI11_PARSE(app, argc, argv);
    if (seed_given) args.seed = seed_flag;

    try {
        const json cfg = load_json_file(args.config_path);
        if (synth->parsed()) return run_synth(cfg, args);
        if (train_auc_cmd->parsed()) return run_train_auc(cfg, args);
        if (train_roc_cmd->parsed()) return run_train_roc(cfg, args);
        if (audit->parsed()) return run_audit(cfg, args);
        if (roc_export->parsed()) return run_roc_export(cfg, args);
        if (sweep->parsed()) return run_sweep(cfg, args);
        std::cerr << "error: config: no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << error_category(e) << ": " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
