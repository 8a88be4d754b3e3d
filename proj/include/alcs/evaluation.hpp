#ifndef ALCS_EVALUATION_HPP
#define ALCS_EVALUATION_HPP

#include <map>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "alcs/clustering.hpp"
#include "alcs/dataset.hpp"
#include "alcs/selection.hpp"

namespace alcs {

/// Simulated annotator. Ground-truth labels leave this class only through
/// query_labels, and only for ids in the unlabeled pool.
class OracleView {
public:
    OracleView(const Dataset& ds, const std::vector<int>& unlabeled_ids)
        : labels_(&ds.labels), pool_(unlabeled_ids.begin(), unlabeled_ids.end()) {}

    /// (id, true label) pairs; throws if any id is outside the pool.
    std::vector<std::pair<int, int>> query_labels(const std::vector<int>& ids);

    std::size_t access_count() const { return accesses_; }

private:
    const std::vector<int>* labels_;
    std::unordered_set<int> pool_;
    std::size_t accesses_ = 0;
};

/// Brute-force k-NN with majority vote. Distance ties break toward the lower
/// training id, vote ties toward the smaller class index.
class KnnClassifier {
public:
    KnnClassifier(std::vector<int> train_ids, const FeatureMatrix& all_features,
                  std::vector<int> train_labels, std::size_t k);

    int predict(std::span<const double> x) const;

private:
    std::vector<int> ids_;
    const FeatureMatrix* features_;
    std::vector<int> labels_;
    std::size_t k_;
};

KnnClassifier train_knn(const std::vector<std::pair<int, int>>& labeled,
                        const FeatureMatrix& all_features, std::size_t k);

struct Metrics {
    double accuracy = 0.0;
    double macro_f1 = 0.0;
};

/// Accuracy and macro-F1 over classes present in truth or predictions;
/// a class's F1 is 0 when precision + recall is 0.
Metrics evaluate(const std::vector<int>& predictions, const std::vector<int>& truth);

QuerySet baseline_random(const std::vector<int>& pool, std::size_t n_q, unsigned seed);

/// Mean rank per strategy (1 = best metric, ties get the mid-rank), averaged
/// over datasets. Every strategy must be present for every dataset.
std::map<std::string, double> average_ranks(
    const std::map<std::string, std::map<std::string, double>>& metric_by_dataset);

struct ExperimentReport {
    std::string dataset;
    std::string strategy;
    unsigned seed = 0;
    std::size_t n_q = 0;
    double budget_fraction = 0.0;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::size_t clusters_found = 1;
    double wall_time_seconds = 0.0;  // volatile; kept out of report files
};

struct ExperimentConfig {
    double budget_fraction = 0.10;
    double test_fraction = 0.30;
    double rho = 0.5;
    std::size_t knn_k = 5;
    std::vector<std::string> strategies{"alcs", "random"};
    std::vector<unsigned> seeds{1};
    ClusteringConfig clustering;
};

/// Full protocol for one dataset: per (strategy, seed) — split, cluster
/// (clustering strategies only), select round(budget_fraction * n_U) queries,
/// label them through the oracle, train k-NN, score on the test split.
std::vector<ExperimentReport> run_experiment(const Dataset& ds, const ExperimentConfig& cfg);

}  // namespace alcs

#endif
