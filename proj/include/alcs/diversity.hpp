#ifndef ALCS_DIVERSITY_HPP
#define ALCS_DIVERSITY_HPP

#include <vector>

#include "alcs/dataset.hpp"

namespace alcs {

/// Niche geometry for one cluster: k-NN-graph average radius and the k used.
struct NicheConfig {
    double radius = 0.0;
    std::size_t k = 1;
};

/// Per-sample query priorities, mutated by niche sharing during selection.
struct PriorityField {
    enum class Kind { center, boundary };
    Kind kind = Kind::center;
    std::vector<int> ids;
    std::vector<double> priorities;

    std::size_t size() const { return ids.size(); }
};

struct NichedPick {
    int id = 0;
    double priority = 0.0;  // value at selection time
};

/// k = round(sqrt(m)) clamped to [1, m-1]; radius = mean over members of the
/// mean distance to their k nearest neighbors inside the cluster.
NicheConfig niche_radius(const FeatureView& member_features);

/// Iteratively take the highest-priority sample, then divide the priorities
/// of unselected samples within cfg.radius of it by max(1, niche priority sum
/// including the picked sample). Ties break toward the lower id.
std::vector<NichedPick> select_with_niching(PriorityField field,
                                            const FeatureView& features,
                                            std::size_t count,
                                            const NicheConfig& cfg);

}  // namespace alcs

#endif
