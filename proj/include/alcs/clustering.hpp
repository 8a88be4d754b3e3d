#ifndef ALCS_CLUSTERING_HPP
#define ALCS_CLUSTERING_HPP

#include <memory>
#include <vector>

#include "alcs/dataset.hpp"

namespace alcs {

/// Cluster summary consumed by selection: discovered centers plus each
/// member's distance to its own center.
struct ClusterModel {
    std::vector<std::vector<double>> centers;
    std::vector<int> member_ids;          // pool ids, view order
    std::vector<int> assignments;         // per position, index into centers
    std::vector<double> center_distances; // per position
    std::vector<std::size_t> cluster_sizes;

    std::size_t num_clusters() const { return centers.size(); }
    std::size_t num_samples() const { return member_ids.size(); }

    /// Positions (indices into member_ids) belonging to cluster i,
    /// in ascending id order.
    std::vector<std::size_t> members_of(std::size_t i) const;
};

/// For each cluster: its two nearest other centers and the
/// center-to-center reference distances.
struct NeighborInfo {
    struct Entry {
        std::size_t nc1 = 0, nc2 = 0;
        double d_ref1 = 0, d_ref2 = 0;
    };
    std::vector<Entry> per_cluster;
};

struct ClusteringConfig {
    double stop_threshold = 0.05;      // stop when best density < tau * initial max
    std::size_t subsample_limit = 20000;  // cap for pairwise-stat estimation
};

std::vector<double> estimate_density(const FeatureView& features);

ClusterModel fps_cluster(const FeatureView& features, const ClusteringConfig& cfg = {});

NeighborInfo neighboring_centers(const ClusterModel& model);

/// Clustering stage behind an interface so selection can be tested against
/// alternative cluster producers.
class Clusterer {
public:
    virtual ~Clusterer() = default;
    virtual ClusterModel cluster(const FeatureView& features) const = 0;
};

class FpsClusterer final : public Clusterer {
public:
    explicit FpsClusterer(ClusteringConfig cfg = {}) : cfg_(cfg) {}
    ClusterModel cluster(const FeatureView& features) const override {
        return fps_cluster(features, cfg_);
    }

private:
    ClusteringConfig cfg_;
};

}  // namespace alcs

#endif
