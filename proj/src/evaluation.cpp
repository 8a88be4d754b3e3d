#include "alcs/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace alcs {

std::vector<std::pair<int, int>> OracleView::query_labels(const std::vector<int>& ids) {
    std::vector<std::pair<int, int>> out;
    out.reserve(ids.size());
    for (int id : ids) {
        if (!pool_.count(id))
            throw ConfigError("oracle query for id " + std::to_string(id) +
                              " outside the unlabeled pool");
        out.emplace_back(id, (*labels_)[static_cast<std::size_t>(id)]);
        ++accesses_;
    }
    return out;
}

KnnClassifier::KnnClassifier(std::vector<int> train_ids, const FeatureMatrix& all_features,
                             std::vector<int> train_labels, std::size_t k)
    : ids_(std::move(train_ids)),
      features_(&all_features),
      labels_(std::move(train_labels)),
      k_(k) {
    if (ids_.empty()) throw ConfigError("train_knn: empty training set");
    if (k_ == 0 || k_ > ids_.size()) throw ConfigError("train_knn: k out of range");
}

int KnnClassifier::predict(std::span<const double> x) const {
    struct Neighbor {
        double dist;
        int id;
        int label;
    };
    std::vector<Neighbor> nbs;
    nbs.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i)
        nbs.push_back({distance(x, (*features_)[static_cast<std::size_t>(ids_[i])]), ids_[i],
                       labels_[i]});
    std::partial_sort(nbs.begin(), nbs.begin() + static_cast<long>(k_), nbs.end(),
                      [](const Neighbor& a, const Neighbor& b) {
                          if (a.dist != b.dist) return a.dist < b.dist;
                          return a.id < b.id;
                      });
    std::map<int, std::size_t> votes;
    for (std::size_t i = 0; i < k_; ++i) ++votes[nbs[i].label];
    int best = -1;
    std::size_t best_votes = 0;
    for (const auto& [label, count] : votes) {
        if (count > best_votes) {  // map iterates labels ascending: vote ties
            best = label;          // resolve toward the smaller class index
            best_votes = count;
        }
    }
    return best;
}

KnnClassifier train_knn(const std::vector<std::pair<int, int>>& labeled,
                        const FeatureMatrix& all_features, std::size_t k) {
    std::vector<int> ids, labels;
    ids.reserve(labeled.size());
    labels.reserve(labeled.size());
    for (const auto& [id, label] : labeled) {
        ids.push_back(id);
        labels.push_back(label);
    }
    return KnnClassifier(std::move(ids), all_features, std::move(labels), k);
}

Metrics evaluate(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (truth.empty() || predictions.size() != truth.size())
        throw ConfigError("evaluate: prediction/truth size mismatch or empty test set");

    std::set<int> classes(truth.begin(), truth.end());
    classes.insert(predictions.begin(), predictions.end());

    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predictions[i] == truth[i]) ++correct;

    double f1_sum = 0;
    for (int cls : classes) {
        std::size_t tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            const bool p = predictions[i] == cls;
            const bool t = truth[i] == cls;
            if (p && t) ++tp;
            else if (p) ++fp;
            else if (t) ++fn;
        }
        const double denom = 2.0 * static_cast<double>(tp) + static_cast<double>(fp + fn);
        f1_sum += denom > 0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
    }

    Metrics m;
    m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    m.macro_f1 = f1_sum / static_cast<double>(classes.size());
    return m;
}

QuerySet baseline_random(const std::vector<int>& pool, std::size_t n_q, unsigned seed) {
    if (n_q > pool.size()) throw ConfigError("baseline_random: n_q exceeds pool size");
    std::vector<int> ids = pool;
    std::sort(ids.begin(), ids.end());
    std::mt19937 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);
    QuerySet qs;
    for (std::size_t i = 0; i < n_q; ++i)
        qs.entries.push_back({ids[i], 0, QueryPass::center, 0.0});
    return qs;
}

std::map<std::string, double> average_ranks(
    const std::map<std::string, std::map<std::string, double>>& metric_by_dataset) {
    if (metric_by_dataset.empty()) throw ConfigError("average_ranks: no datasets");

    std::set<std::string> strategies;
    for (const auto& [ds, row] : metric_by_dataset)
        for (const auto& [strat, v] : row) strategies.insert(strat);

    std::map<std::string, double> rank_sum;
    for (const auto& [ds, row] : metric_by_dataset) {
        if (row.size() != strategies.size())
            throw ConfigError("average_ranks: dataset '" + ds + "' is missing strategies");
        std::vector<std::pair<double, std::string>> order;
        for (const auto& [strat, v] : row) order.emplace_back(v, strat);
        std::sort(order.begin(), order.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        // mid-rank for ties
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() && order[j + 1].first == order[i].first) ++j;
            const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t t = i; t <= j; ++t) rank_sum[order[t].second] += mid;
            i = j + 1;
        }
    }
    std::map<std::string, double> out;
    for (const auto& [strat, sum] : rank_sum)
        out[strat] = sum / static_cast<double>(metric_by_dataset.size());
    return out;
}

std::vector<ExperimentReport> run_experiment(const Dataset& ds, const ExperimentConfig& cfg) {
    if (cfg.budget_fraction <= 0 || cfg.budget_fraction >= 1)
        throw ConfigError("budget_fraction must lie in (0,1)");
    if (cfg.seeds.empty()) throw ConfigError("at least one seed required");

    std::vector<ExperimentReport> reports;
    for (const auto& strategy : cfg.strategies) {
        for (unsigned seed : cfg.seeds) {
            const auto start = std::chrono::steady_clock::now();

            const PoolSplit split = split_pool(ds, seed, cfg.test_fraction);
            const std::size_t n_u = split.unlabeled_ids.size();
            const auto n_q = std::max<std::size_t>(
                1, static_cast<std::size_t>(
                       std::llround(cfg.budget_fraction * static_cast<double>(n_u))));

            const FeatureView pool_view(ds.features, split.unlabeled_ids);
            OracleView oracle(ds, split.unlabeled_ids);

            QuerySet queries;
            std::size_t clusters_found = 1;
            if (strategy == "random") {
                queries = baseline_random(split.unlabeled_ids, n_q, seed);
            } else if (strategy == "alcs" || strategy == "center") {
                const double rho = strategy == "center" ? 0.0 : cfg.rho;
                const ClusterModel model = fps_cluster(pool_view, cfg.clustering);
                clusters_found = model.num_clusters();
                const QueryPlan plan = allocate_budget(model, n_q, rho);
                NeighborInfo neighbors;
                const NeighborInfo* nb = nullptr;
                if (model.num_clusters() >= 2) {
                    neighbors = neighboring_centers(model);
                    nb = &neighbors;
                }
                queries = hybrid_select(model, nb, plan, pool_view);
            } else {
                throw ConfigError("unknown strategy: " + strategy);
            }

            const auto labeled = oracle.query_labels(queries.ids());
            const std::size_t k = std::min(cfg.knn_k, labeled.size());
            const KnnClassifier clf = train_knn(labeled, ds.features, k);

            std::vector<int> preds, truth;
            preds.reserve(split.test_ids.size());
            for (int id : split.test_ids) {
                preds.push_back(clf.predict(ds.features[static_cast<std::size_t>(id)]));
                truth.push_back(ds.labels[static_cast<std::size_t>(id)]);
            }
            const Metrics m = evaluate(preds, truth);

            ExperimentReport rep;
            rep.dataset = ds.name;
            rep.strategy = strategy;
            rep.seed = seed;
            rep.n_q = n_q;
            rep.budget_fraction = cfg.budget_fraction;
            rep.accuracy = m.accuracy;
            rep.macro_f1 = m.macro_f1;
            rep.clusters_found = clusters_found;
            rep.wall_time_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

}  // namespace alcs
