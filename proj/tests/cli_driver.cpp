// Integration tests for the command-line tool. Drives the real binary
// (path in argv[1]) through synth / train / audit / roc-export / sweep and
// checks artifacts, re-audit reproducibility, determinism and error exits.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fairrank/tabular.hpp"

namespace fs = std::filesystem;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_work;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAILED: %s\n", what.c_str());
        ++g_failures;
    }
}

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
    std::string cmd = "\"" + g_cli + "\" " + args;
    if (!stderr_file.empty()) cmd += " 2> \"" + stderr_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    return status;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path);
    out << content;
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    return lines;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_driver <path-to-fairrank_cli>\n");
        return 2;
    }
    g_cli = argv[1];
    g_work = fs::temp_directory_path() / "fairrank_cli_driver";
    fs::remove_all(g_work);
    fs::create_directories(g_work);

    // synth writes the generated dataset
    write(g_work / "synth.json",
          R"({"seed": 7, "dataset": {"generator": "square", "n": 400, "q1": 0.85}})");
    check(run_cli("synth --config \"" + (g_work / "synth.json").string() + "\" --out \"" +
                  (g_work / "synth_out").string() + "\"") == 0,
          "synth exits 0");
    const std::string dataset_csv = slurp(g_work / "synth_out" / "dataset.csv");
    check(count_lines(dataset_csv) == 401, "synth wrote 400 rows plus header");
    check(dataset_csv.rfind("x1,x2,y,z\n", 0) == 0, "synth header is x1,x2,y,z");

    // train-auc on synthetic data
    const std::string train_cfg = R"({
      "seed": 11,
      "dataset": {"type": "synthetic", "generator": "square",
                   "n_train_val": 1200, "n_test": 1500, "q1": 0.85},
      "model": {"depth": 0},
      "trainer": {"lambda": 1.0, "lambda_reg": 0.01, "n_iter": 300},
      "constraint": {"kind": "intra_group"}
    })";
    write(g_work / "train.json", train_cfg);
    check(run_cli("train-auc --config \"" + (g_work / "train.json").string() +
                  "\" --out \"" + (g_work / "run1").string() + "\"") == 0,
          "train-auc exits 0");
    for (const char* artifact : {"checkpoint.json", "metrics.json", "training_log.csv"})
        check(fs::exists(g_work / "run1" / artifact),
              std::string("train-auc wrote ") + artifact);
    std::size_t curve_files = 0;
    for (const auto& entry : fs::directory_iterator(g_work / "run1" / "roc"))
        if (entry.path().extension() == ".csv") ++curve_files;
    check(curve_files == 11, "train-auc exported the 11 curve families");

    // deterministic: identical config and seed reproduce the checkpoint
    check(run_cli("train-auc --config \"" + (g_work / "train.json").string() +
                  "\" --out \"" + (g_work / "run1_repeat").string() + "\"") == 0,
          "train-auc rerun exits 0");
    check(slurp(g_work / "run1" / "checkpoint.json") ==
              slurp(g_work / "run1_repeat" / "checkpoint.json"),
          "rerun reproduces a byte-identical checkpoint");

    // audit on the same config + checkpoint reproduces the metrics report
    {
        std::string audit_cfg = train_cfg;
        audit_cfg.insert(audit_cfg.rfind('}'), R"(, "checkpoint": ")" +
                                                    (g_work / "run1" / "checkpoint.json")
                                                        .generic_string() +
                                                    "\"");
        write(g_work / "audit.json", audit_cfg);
        check(run_cli("audit --config \"" + (g_work / "audit.json").string() +
                      "\" --out \"" + (g_work / "audit_out").string() + "\"") == 0,
              "audit exits 0");
        check(slurp(g_work / "run1" / "metrics.json") ==
                  slurp(g_work / "audit_out" / "metrics.json"),
              "re-audit reproduces identical metric values");
    }

    // roc-export from the checkpoint
    check(run_cli("roc-export --config \"" + (g_work / "audit.json").string() +
                  "\" --out \"" + (g_work / "export_out").string() + "\"") == 0,
          "roc-export exits 0");
    {
        const std::string curve = slurp(g_work / "export_out" / "roc" / "roc_h_g.csv");
        check(curve.rfind("alpha,roc\n", 0) == 0, "curve csv has the alpha,roc header");
        check(count_lines(curve) > 500, "curve csv covers the 512-point grid");
    }

    // train on a csv dataset with a schema file and a held-out test fraction
    {
        fairrank::TabularSchema schema;
        schema.label_column = "y";
        schema.label_positive_values = {"1"};
        schema.label_negative_values = {"-1"};
        schema.group_column = "z";
        schema.group1_values = {"1"};
        schema.group0_values = {"0"};
        schema.numeric_columns = {"x1", "x2"};
        schema.standardize = false;
        write(g_work / "schema.json", schema.to_json());

        const std::string csv_cfg = R"({
          "seed": 13,
          "dataset": {"type": "csv", "path": ")" +
                                    (g_work / "synth_out" / "dataset.csv").generic_string() +
                                    R"(", "schema": ")" +
                                    (g_work / "schema.json").generic_string() +
                                    R"(", "test_fraction": 0.2},
          "model": {"depth": 0},
          "trainer": {"lambda": 0.0, "n_iter": 200},
          "constraint": {"kind": "intra_group"}
        })";
        write(g_work / "train_csv.json", csv_cfg);
        check(run_cli("train-auc --config \"" + (g_work / "train_csv.json").string() +
                      "\" --out \"" + (g_work / "run_csv").string() + "\"") == 0,
              "train-auc on a csv dataset exits 0");
        check(fs::exists(g_work / "run_csv" / "encoding.json"),
              "csv run persisted the encoding report");
    }

    // audit a pre-scored file through score_column
    {
        auto rows = fairrank::read_csv((g_work / "synth_out" / "dataset.csv").string());
        std::string scored;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto row = rows[i];
            row.push_back(i == 0 ? "score" : row[0]);  // score := x1
            fairrank::write_csv_row(scored, row);
        }
        write(g_work / "scored.csv", scored);
        const std::string audit_scored = R"({
          "seed": 3,
          "dataset": {"type": "csv", "path": ")" +
                                         (g_work / "scored.csv").generic_string() + R"("},
          "score_column": "score"
        })";
        write(g_work / "audit_scored.json", audit_scored);
        check(run_cli("audit --config \"" + (g_work / "audit_scored.json").string() +
                      "\" --out \"" + (g_work / "audit_scored_out").string() + "\"") == 0,
              "audit with a score column exits 0");
        const std::string metrics = slurp(g_work / "audit_scored_out" / "metrics.json");
        check(metrics.find("\"auc\"") != std::string::npos,
              "scored audit reports a ranking AUC");
    }

    // single-candidate sweep equals one training run plus a selection record
    {
        std::string sweep_cfg = train_cfg;
        sweep_cfg.insert(sweep_cfg.rfind('}'),
                         R"(, "sweep": {"mode": "auc", "lambda": [0.5],
                              "lambda_reg": [0.01]})");
        write(g_work / "sweep.json", sweep_cfg);
        check(run_cli("sweep --config \"" + (g_work / "sweep.json").string() +
                      "\" --out \"" + (g_work / "sweep_out").string() + "\"") == 0,
              "sweep exits 0");
        check(fs::exists(g_work / "sweep_out" / "sweep_ranking.csv"),
              "sweep wrote the ranking table");
        check(fs::exists(g_work / "sweep_out" / "best.json"), "sweep wrote best.json");
        check(fs::exists(g_work / "sweep_out" / "points" / "point_0" / "checkpoint.json"),
              "sweep wrote the per-point artifacts");
    }

    // error handling: nonzero exit and a single machine-parsable reason line
    {
        write(g_work / "noseed.json",
              R"({"dataset": {"generator": "square", "n": 10, "q1": 0.5}})");
        const int status = run_cli("synth --config \"" + (g_work / "noseed.json").string() +
                                       "\" --out \"" + (g_work / "err_out").string() + "\"",
                                   g_work / "err1.txt");
        const std::string err = slurp(g_work / "err1.txt");
        check(status != 0, "missing seed exits nonzero");
        check(err.rfind("error: config:", 0) == 0 && count_lines(err) == 1,
              "missing seed prints one error: config line");
    }
    {
        std::string bad = train_cfg;
        const auto at = bad.find("intra_group");
        bad.replace(at, std::string("intra_group").size(), "no_such_kind");
        write(g_work / "badkind.json", bad);
        const int status =
            run_cli("train-auc --config \"" + (g_work / "badkind.json").string() +
                        "\" --out \"" + (g_work / "err_out2").string() + "\"",
                    g_work / "err2.txt");
        check(status != 0 && slurp(g_work / "err2.txt").rfind("error: config:", 0) == 0,
              "unknown constraint kind is a config error");
    }
    {
        write(g_work / "noscore.json", R"({"seed": 1, "dataset": {"type": "synthetic",
              "generator": "square", "n_train_val": 50, "q1": 0.5}})");
        const int status = run_cli("audit --config \"" + (g_work / "noscore.json").string() +
                                       "\" --out \"" + (g_work / "err_out3").string() + "\"",
                                   g_work / "err3.txt");
        check(status != 0 && slurp(g_work / "err3.txt").rfind("error: config:", 0) == 0,
              "audit without checkpoint or score column is a config error");
    }

    std::printf("%d failures\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
