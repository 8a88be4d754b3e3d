#ifndef ALCS_DATASET_HPP
#define ALCS_DATASET_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcs/errors.hpp"

namespace alcs {

using FeatureMatrix = std::vector<std::vector<double>>;

enum class Normalization { none, min_max, z_score };

/// Tabular dataset: one feature row per sample, sample id = row index.
/// Labels are stored as indices into class_names (sorted lexicographically);
/// -1 marks a missing label.
struct Dataset {
    std::string name;
    FeatureMatrix features;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    Normalization normalization = Normalization::none;

    std::size_t size() const { return features.size(); }
    std::size_t dim() const { return features.empty() ? 0 : features[0].size(); }
    std::size_t num_classes() const { return class_names.size(); }
};

/// Read-only view of a subset of dataset rows. Positions 0..size()-1 map to
/// dataset ids via id(); selection and clustering work in position space and
/// report results in id space.
class FeatureView {
public:
    FeatureView() = default;
    FeatureView(const FeatureMatrix& rows, std::vector<int> ids)
        : rows_(&rows), ids_(std::move(ids)) {}

    static FeatureView all_of(const Dataset& ds) {
        std::vector<int> ids(ds.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
        return FeatureView(ds.features, std::move(ids));
    }

    std::size_t size() const { return ids_.size(); }
    std::size_t dim() const { return size() == 0 ? 0 : row(0).size(); }
    int id(std::size_t pos) const { return ids_[pos]; }
    std::span<const double> row(std::size_t pos) const {
        return (*rows_)[static_cast<std::size_t>(ids_[pos])];
    }
    const std::vector<int>& ids() const { return ids_; }

    /// View over a subset of this view's positions.
    FeatureView subset(const std::vector<std::size_t>& positions) const {
        std::vector<int> ids;
        ids.reserve(positions.size());
        for (std::size_t p : positions) ids.push_back(ids_[p]);
        return FeatureView(*rows_, std::move(ids));
    }

private:
    const FeatureMatrix* rows_ = nullptr;
    std::vector<int> ids_;
};

/// Disjoint partition of a dataset into an (initially empty) labeled set,
/// the query pool, and a held-out test set.
struct PoolSplit {
    std::vector<int> labeled_ids;
    std::vector<int> unlabeled_ids;
    std::vector<int> test_ids;
    unsigned seed = 0;
    bool stratified = true;  // false when some class had < 2 members
};

/// Column selector for the label: by zero-based index or by header name.
struct LabelColumn {
    int index = -1;
    std::string name;

    static LabelColumn by_index(int i) { return LabelColumn{i, {}}; }
    static LabelColumn by_name(std::string n) { return LabelColumn{-1, std::move(n)}; }
    bool is_name() const { return index < 0; }
};

Dataset load_dataset(const std::string& path, const LabelColumn& label_column);

Dataset normalize(const Dataset& ds, Normalization method);

double distance(std::span<const double> a, std::span<const double> b);

PoolSplit split_pool(const Dataset& ds, unsigned seed, double test_fraction);

}  // namespace alcs

#endif
