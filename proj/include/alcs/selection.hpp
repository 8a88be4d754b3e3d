#ifndef ALCS_SELECTION_HPP
#define ALCS_SELECTION_HPP

#include <string>
#include <vector>

#include "alcs/clustering.hpp"
#include "alcs/dataset.hpp"
#include "alcs/diversity.hpp"

namespace alcs {

/// Per-cluster query budgets: n_q_i proportional to cluster size, split into
/// a boundary share rho_i and a center share 1 - rho_i.
struct QueryPlan {
    struct ClusterBudget {
        std::size_t cluster = 0;
        std::size_t total = 0;
        std::size_t boundary_count = 0;
        std::size_t center_count = 0;
        double rho = 0.0;
    };
    std::size_t total_budget = 0;
    std::vector<ClusterBudget> per_cluster;
};

enum class QueryPass { center, boundary };

/// Final query set with provenance per pick.
struct QuerySet {
    struct Entry {
        int id = 0;
        std::size_t cluster = 0;
        QueryPass pass = QueryPass::center;
        double priority = 0.0;
    };
    std::vector<Entry> entries;

    std::size_t size() const { return entries.size(); }
    std::vector<int> ids() const;
};

/// Logistic center priority 1/(1+e^d); 0.5 at the center, decreasing in d.
double cluster_representativeness(double d);

/// Logistic boundary priority 1/(1+e^{(d1+d2)/(d_ref1+d_ref2)}).
double cluster_uncertainty(double d1, double d2, double d_ref1, double d_ref2);

/// Proportional allocation with round-half-to-even, then a remainder-repair
/// pass so budgets sum to n_q exactly and 0 <= n_q_i <= |C_i|. rho is forced
/// to 0 when the model has a single cluster.
QueryPlan allocate_budget(const ClusterModel& model, std::size_t n_q, double rho = 0.5);

/// The ceil(|C_i|/2) members of cluster i farthest from its center,
/// ties toward the lower id. Returned as positions into model.member_ids.
std::vector<std::size_t> boundary_candidates(const ClusterModel& model, std::size_t i);

/// Hybrid center/boundary selection with niching per cluster. `neighbors`
/// may be null only when every boundary_count is 0.
QuerySet hybrid_select(const ClusterModel& model,
                       const NeighborInfo* neighbors,
                       const QueryPlan& plan,
                       const FeatureView& features);

}  // namespace alcs

#endif
