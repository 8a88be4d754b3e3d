// Command-line front end: `cluster` inspects the clustering stage, `select`
// runs the hybrid query selection, `bench` runs the full benchmark protocol
// against the internal baselines.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alcs/clustering.hpp"
#include "alcs/dataset.hpp"
#include "alcs/errors.hpp"
#include "alcs/evaluation.hpp"
#include "alcs/selection.hpp"
#include "alcs/synthetic.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitRuntimeError = 4;

struct CliOptions {
    std::vector<std::string> data_paths;
    std::vector<std::string> synthetic_specs;
    std::string label_col = "-1";  // name, or zero-based index; -1 = last column
    std::string normalize_method = "min-max";
    double budget = 0.10;
    double rho = 0.5;
    double tau = 0.05;
    double test_fraction = 0.30;
    unsigned seed = 1;
    std::vector<unsigned> seeds{1};
    std::vector<std::string> strategies{"alcs", "random"};
    std::size_t knn_k = 5;
    std::string out_dir = ".";
};

alcs::LabelColumn parse_label_col(const std::string& s) {
    if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) ||
                       (s[0] == '-' && s.size() > 1)))
        return alcs::LabelColumn::by_index(std::stoi(s));
    return alcs::LabelColumn::by_name(s);
}

alcs::Normalization parse_normalization(const std::string& s) {
    if (s == "none") return alcs::Normalization::none;
    if (s == "min-max") return alcs::Normalization::min_max;
    if (s == "z-score") return alcs::Normalization::z_score;
    throw alcs::ConfigError("unknown normalization method: " + s);
}

// Loads every --data file and generates every --synthetic spec, in CLI order.
std::vector<alcs::Dataset> gather_datasets(const CliOptions& opt, unsigned gen_seed) {
    std::vector<alcs::Dataset> out;
    for (const auto& path : opt.data_paths) {
        alcs::LabelColumn col = parse_label_col(opt.label_col);
        if (!col.is_name() && col.index < 0) {
            // -1 selects the last column; peek at the first line for arity
            std::ifstream in(path);
            std::string first;
            if (!in || !std::getline(in, first)) throw alcs::DataError("cannot read " + path);
            const auto arity = std::count(first.begin(), first.end(), ',') + 1;
            col = alcs::LabelColumn::by_index(static_cast<int>(arity) - 1);
        }
        auto ds = alcs::load_dataset(path, col);
        ds.name = fs::path(path).stem().string();
        out.push_back(std::move(ds));
    }
    for (const auto& spec : opt.synthetic_specs)
        out.push_back(alcs::make_blobs(alcs::parse_blob_spec(spec), gen_seed));
    if (out.empty()) throw alcs::ConfigError("no dataset: pass --data or --synthetic");
    for (auto& ds : out) ds = alcs::normalize(ds, parse_normalization(opt.normalize_method));
    return out;
}

json config_echo(const CliOptions& opt) {
    json j;
    j["data"] = opt.data_paths;
    j["synthetic"] = opt.synthetic_specs;
    j["label_col"] = opt.label_col;
    j["normalize"] = opt.normalize_method;
    j["budget"] = opt.budget;
    j["rho"] = opt.rho;
    j["tau"] = opt.tau;
    j["test_fraction"] = opt.test_fraction;
    j["seed"] = opt.seed;
    j["seeds"] = opt.seeds;
    j["strategies"] = opt.strategies;
    j["knn_k"] = opt.knn_k;
    return j;
}

// Effective config in CLI11-readable form, so a run can be reproduced with
// `--config <out>/config.ini`.
std::string config_ini(const CliOptions& opt, const std::string& subcommand) {
    std::ostringstream ini;
    ini << "[" << subcommand << "]\n";
    for (const auto& p : opt.data_paths) ini << "data=" << p << "\n";
    for (const auto& s : opt.synthetic_specs) ini << "synthetic=" << s << "\n";
    ini << "label-col=" << opt.label_col << "\n";
    ini << "normalize=" << opt.normalize_method << "\n";
    ini.precision(17);
    ini << "budget=" << opt.budget << "\n";
    ini << "rho=" << opt.rho << "\n";
    ini << "tau=" << opt.tau << "\n";
    ini << "knn-k=" << opt.knn_k << "\n";
    ini << "seed=" << opt.seed << "\n";
    if (subcommand == "bench") {
        ini << "test-fraction=" << opt.test_fraction << "\n";
        ini << "seeds=";
        for (std::size_t i = 0; i < opt.seeds.size(); ++i)
            ini << (i ? "," : "") << opt.seeds[i];
        ini << "\nstrategies=";
        for (std::size_t i = 0; i < opt.strategies.size(); ++i)
            ini << (i ? "," : "") << opt.strategies[i];
        ini << "\n";
    }
    return ini.str();
}

// Atomic report emission: write to a sibling temp file, then rename.
void write_file_atomic(const fs::path& target, const std::string& content) {
    fs::create_directories(target.parent_path().empty() ? "." : target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

int cmd_cluster(const CliOptions& opt) {
    const auto datasets = gather_datasets(opt, opt.seed);
    json out;
    out["config"] = config_echo(opt);
    out["datasets"] = json::array();
    for (const auto& ds : datasets) {
        const auto view = alcs::FeatureView::all_of(ds);
        const auto model = alcs::fps_cluster(view, {opt.tau});
        json dj;
        dj["dataset"] = ds.name;
        dj["n"] = ds.size();
        dj["clusters_found"] = model.num_clusters();
        dj["clusters"] = json::array();
        for (std::size_t i = 0; i < model.num_clusters(); ++i) {
            json cj;
            cj["index"] = i;
            cj["size"] = model.cluster_sizes[i];
            cj["center"] = model.centers[i];
            json members = json::array();
            for (std::size_t p : model.members_of(i)) members.push_back(model.member_ids[p]);
            cj["member_ids"] = members;
            dj["clusters"].push_back(cj);
        }
        out["datasets"].push_back(dj);
        std::cout << ds.name << ": " << model.num_clusters() << " clusters over "
                  << ds.size() << " samples\n";
    }
    write_file_atomic(fs::path(opt.out_dir) / "cluster_report.json", out.dump(2) + "\n");
    write_file_atomic(fs::path(opt.out_dir) / "config.ini", config_ini(opt, "cluster"));
    return 0;
}

int cmd_select(const CliOptions& opt) {
    const auto datasets = gather_datasets(opt, opt.seed);
    json out;
    out["config"] = config_echo(opt);
    out["datasets"] = json::array();
    for (const auto& ds : datasets) {
        const auto view = alcs::FeatureView::all_of(ds);
        const auto model = alcs::fps_cluster(view, {opt.tau});
        const auto n_q = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::llround(opt.budget * static_cast<double>(ds.size()))));
        const auto plan = alcs::allocate_budget(model, n_q, opt.rho);
        alcs::NeighborInfo neighbors;
        const alcs::NeighborInfo* nb = nullptr;
        if (model.num_clusters() >= 2) {
            neighbors = alcs::neighboring_centers(model);
            nb = &neighbors;
        }
        const auto queries = alcs::hybrid_select(model, nb, plan, view);

        json dj;
        dj["dataset"] = ds.name;
        dj["n_q"] = n_q;
        dj["rounding"] = "per-cluster round-half-to-even with remainder repair";
        dj["plan"] = json::array();
        for (const auto& b : plan.per_cluster)
            dj["plan"].push_back({{"cluster", b.cluster},
                                  {"total", b.total},
                                  {"center_count", b.center_count},
                                  {"boundary_count", b.boundary_count},
                                  {"rho", b.rho}});
        dj["selected"] = json::array();
        for (const auto& e : queries.entries)
            dj["selected"].push_back(
                {{"id", e.id},
                 {"cluster", e.cluster},
                 {"pass", e.pass == alcs::QueryPass::center ? "center" : "boundary"},
                 {"priority", e.priority}});
        out["datasets"].push_back(dj);
        std::cout << ds.name << ": selected " << queries.size() << " of " << ds.size()
                  << " samples across " << model.num_clusters() << " clusters\n";
    }
    write_file_atomic(fs::path(opt.out_dir) / "query_set.json", out.dump(2) + "\n");
    write_file_atomic(fs::path(opt.out_dir) / "config.ini", config_ini(opt, "select"));
    return 0;
}

int cmd_bench(const CliOptions& opt) {
    const auto datasets = gather_datasets(opt, opt.seed);
    alcs::ExperimentConfig cfg;
    cfg.budget_fraction = opt.budget;
    cfg.test_fraction = opt.test_fraction;
    cfg.rho = opt.rho;
    cfg.knn_k = opt.knn_k;
    cfg.strategies = opt.strategies;
    cfg.seeds = opt.seeds;
    cfg.clustering.stop_threshold = opt.tau;

    const json echo = config_echo(opt);
    std::ostringstream lines;
    // metric means per dataset/strategy feed the rank table
    std::map<std::string, std::map<std::string, double>> acc_table, f1_table;
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    double total_time = 0;

    for (const auto& ds : datasets) {
        const auto reports = alcs::run_experiment(ds, cfg);
        for (const auto& r : reports) {
            json j;
            j["dataset"] = r.dataset;
            j["strategy"] = r.strategy;
            j["seed"] = r.seed;
            j["n_q"] = r.n_q;
            j["budget_fraction"] = r.budget_fraction;
            j["accuracy"] = r.accuracy;
            j["macro_f1"] = r.macro_f1;
            j["clusters_found"] = r.clusters_found;
            j["config"] = echo;
            lines << j.dump() << "\n";
            acc_table[r.dataset][r.strategy] += r.accuracy;
            f1_table[r.dataset][r.strategy] += r.macro_f1;
            ++counts[r.dataset][r.strategy];
            total_time += r.wall_time_seconds;
        }
    }
    for (auto& [ds, row] : acc_table)
        for (auto& [strat, v] : row) v /= static_cast<double>(counts[ds][strat]);
    for (auto& [ds, row] : f1_table)
        for (auto& [strat, v] : row) v /= static_cast<double>(counts[ds][strat]);

    const auto acc_ranks = alcs::average_ranks(acc_table);
    const auto f1_ranks = alcs::average_ranks(f1_table);

    std::ostringstream csv;
    csv << "dataset,strategy,mean_accuracy,mean_macro_f1,acc_rank,f1_rank\n";
    csv.precision(17);
    for (const auto& [ds, row] : acc_table) {
        // per-dataset ranks
        const auto acc_r = alcs::average_ranks({{ds, row}});
        const auto f1_r = alcs::average_ranks({{ds, f1_table.at(ds)}});
        for (const auto& [strat, acc] : row)
            csv << ds << "," << strat << "," << acc << "," << f1_table.at(ds).at(strat) << ","
                << acc_r.at(strat) << "," << f1_r.at(strat) << "\n";
    }
    for (const auto& [strat, rank] : acc_ranks)
        csv << "avg_ranks," << strat << ",,," << rank << "," << f1_ranks.at(strat) << "\n";

    const fs::path out_dir(opt.out_dir);
    write_file_atomic(out_dir / "reports.jsonl", lines.str());
    write_file_atomic(out_dir / "summary.csv", csv.str());
    write_file_atomic(out_dir / "config.ini", config_ini(opt, "bench"));

    std::cout << "wrote " << (out_dir / "reports.jsonl").string() << " and "
              << (out_dir / "summary.csv").string() << " (" << total_time << "s compute)\n";
    for (const auto& [strat, rank] : acc_ranks)
        std::cout << strat << ": avg acc rank " << rank << ", avg f1 rank " << f1_ranks.at(strat)
                  << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ALCS: clustering-based active learning with diversity exploration"};
    app.require_subcommand(1);
    app.set_config("--config");

    CliOptions opt;
    auto add_common = [&](CLI::App* sub) {
        sub->fallthrough();  // lets --config reach the parent app
        sub->configurable();
        sub->add_option("--data", opt.data_paths, "CSV dataset path (repeatable)");
        sub->add_option("--synthetic", opt.synthetic_specs,
                        "synthetic dataset spec blobs:<c>:<n>:<overlap> (repeatable)");
        sub->add_option("--label-col", opt.label_col,
                        "label column: header name or zero-based index (-1 = last)");
        sub->add_option("--normalize", opt.normalize_method, "none | min-max | z-score");
        sub->add_option("--budget", opt.budget, "query budget as a fraction of the pool");
        sub->add_option("--rho", opt.rho, "boundary share of each cluster budget, in [0,1]");
        sub->add_option("--tau", opt.tau, "clustering stop threshold");
        sub->add_option("--knn-k", opt.knn_k, "k for the k-NN evaluator");
        sub->add_option("--seed", opt.seed, "seed for synthetic generation / single-run ops");
        sub->add_option("--out", opt.out_dir, "output directory");
    };

    auto* cluster = app.add_subcommand("cluster", "run the clustering stage, export the summary");
    add_common(cluster);
    auto* select = app.add_subcommand("select", "run hybrid query selection, export the query set");
    add_common(select);
    auto* bench = app.add_subcommand("bench", "full benchmark against internal baselines");
    add_common(bench);
    bench->add_option("--seeds", opt.seeds, "benchmark seeds (repeatable or comma-separated)")
        ->delimiter(',');
    bench->add_option("--strategies", opt.strategies,
                      "strategies to run: alcs, center, random")
        ->delimiter(',');
    bench->add_option("--test-fraction", opt.test_fraction, "held-out test fraction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    try {
        if (cluster->parsed()) return cmd_cluster(opt);
        if (select->parsed()) return cmd_select(opt);
        return cmd_bench(opt);
    } catch (const alcs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const alcs::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
