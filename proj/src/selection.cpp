#include "alcs/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace alcs {

std::vector<int> QuerySet::ids() const {
    std::vector<int> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.id);
    return out;
}

double cluster_representativeness(double d) {
    if (d < 0) throw ConfigError("cluster_representativeness: negative distance");
    return 1.0 / (1.0 + std::exp(d));
}

double cluster_uncertainty(double d1, double d2, double d_ref1, double d_ref2) {
    if (d1 < 0 || d2 < 0) throw ConfigError("cluster_uncertainty: negative distance");
    if (d_ref1 + d_ref2 <= 0) throw ConfigError("cluster_uncertainty: reference distance sum must be positive");
    return 1.0 / (1.0 + std::exp((d1 + d2) / (d_ref1 + d_ref2)));
}

QueryPlan allocate_budget(const ClusterModel& model, std::size_t n_q, double rho) {
    if (model.num_clusters() == 0) throw ConfigError("allocate_budget: empty model");
    if (rho < 0 || rho > 1) throw ConfigError("allocate_budget: rho must lie in [0,1]");
    const std::size_t n_u = model.num_samples();
    if (n_q == 0) throw ConfigError("allocate_budget: n_q must be positive");
    if (n_q > n_u) throw ConfigError("allocate_budget: n_q exceeds pool size");

    const std::size_t c = model.num_clusters();
    if (c == 1) rho = 0.0;  // no neighboring centers, boundary pass disabled

    std::vector<double> exact(c);
    std::vector<std::size_t> alloc(c);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < c; ++i) {
        exact[i] = static_cast<double>(model.cluster_sizes[i]) / static_cast<double>(n_u) *
                   static_cast<double>(n_q);
        const double r = std::nearbyint(exact[i]);  // round half to even
        alloc[i] = std::min(model.cluster_sizes[i],
                            static_cast<std::size_t>(std::max(0.0, r)));
        sum += alloc[i];
    }

    // repair: push the total to n_q by the largest/smallest remainder,
    // ties toward the larger cluster then the lower index
    while (sum != n_q) {
        std::size_t pick = c;
        for (std::size_t i = 0; i < c; ++i) {
            if (sum < n_q && alloc[i] >= model.cluster_sizes[i]) continue;
            if (sum > n_q && alloc[i] == 0) continue;
            if (pick == c) {
                pick = i;
                continue;
            }
            const double ri = exact[i] - static_cast<double>(alloc[i]);
            const double rp = exact[pick] - static_cast<double>(alloc[pick]);
            const bool better = sum < n_q ? ri > rp : ri < rp;
            const bool tie = ri == rp;
            if (better ||
                (tie && (model.cluster_sizes[i] > model.cluster_sizes[pick] ||
                         (model.cluster_sizes[i] == model.cluster_sizes[pick] && i < pick))))
                pick = i;
        }
        if (sum < n_q) {
            ++alloc[pick];
            ++sum;
        } else {
            --alloc[pick];
            --sum;
        }
    }

    QueryPlan plan;
    plan.total_budget = n_q;
    for (std::size_t i = 0; i < c; ++i) {
        QueryPlan::ClusterBudget b;
        b.cluster = i;
        b.total = alloc[i];
        b.rho = rho;
        auto boundary = static_cast<std::size_t>(
            std::max(0.0, std::nearbyint(static_cast<double>(alloc[i]) * rho)));
        boundary = std::min(boundary, alloc[i]);
        // boundary picks come from the top-half-distance shell; overflow
        // goes back to the center pass
        const std::size_t cb_size = (model.cluster_sizes[i] + 1) / 2;
        boundary = std::min(boundary, cb_size);
        b.boundary_count = boundary;
        b.center_count = alloc[i] - boundary;
        plan.per_cluster.push_back(b);
    }
    return plan;
}

std::vector<std::size_t> boundary_candidates(const ClusterModel& model, std::size_t i) {
    auto members = model.members_of(i);
    if (members.empty()) throw ConfigError("boundary_candidates: empty cluster");
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        if (model.center_distances[a] != model.center_distances[b])
            return model.center_distances[a] > model.center_distances[b];
        return model.member_ids[a] < model.member_ids[b];
    });
    const std::size_t take = (members.size() + 1) / 2;
    members.resize(take);
    return members;
}

QuerySet hybrid_select(const ClusterModel& model,
                       const NeighborInfo* neighbors,
                       const QueryPlan& plan,
                       const FeatureView& features) {
    if (features.size() != model.num_samples())
        throw ConfigError("hybrid_select: feature view does not match model");

    QuerySet result;
    for (const auto& budget : plan.per_cluster) {
        const std::size_t i = budget.cluster;
        if (budget.total == 0) continue;
        if (budget.boundary_count > 0 && neighbors == nullptr)
            throw ConfigError("hybrid_select: boundary pass requires neighbor info");

        const auto members = model.members_of(i);
        const FeatureView member_view = features.subset(members);
        const NicheConfig cfg = niche_radius(member_view);

        auto make_center_field = [&](const std::unordered_set<int>& exclude) {
            PriorityField field;
            field.kind = PriorityField::Kind::center;
            std::vector<std::size_t> local;  // positions within `members`
            for (std::size_t m = 0; m < members.size(); ++m) {
                const int id = model.member_ids[members[m]];
                if (exclude.count(id)) continue;
                field.ids.push_back(id);
                field.priorities.push_back(
                    cluster_representativeness(model.center_distances[members[m]]));
                local.push_back(m);
            }
            return std::pair{std::move(field), member_view.subset(local)};
        };

        std::unordered_set<int> picked;
        auto record_center = [&](const std::vector<NichedPick>& picks) {
            for (const auto& p : picks) {
                result.entries.push_back({p.id, i, QueryPass::center, p.priority});
                picked.insert(p.id);
            }
        };

        // center pass first; its picks are excluded from the boundary pass
        {
            auto [field, view] = make_center_field({});
            record_center(select_with_niching(std::move(field), view, budget.center_count, cfg));
        }

        // boundary pass over the top-half-distance shell, minus center picks
        std::size_t boundary_count = budget.boundary_count;
        if (boundary_count > 0) {
            const auto cb = boundary_candidates(model, i);
            std::vector<std::size_t> available;
            // shell exhausted by the center pass: move the shortfall back to
            // extra center picks; those may land in the shell too, so repeat
            // until the boundary count fits what is left
            while (true) {
                available.clear();
                for (std::size_t p : cb)
                    if (!picked.count(model.member_ids[p])) available.push_back(p);
                if (boundary_count <= available.size()) break;
                const std::size_t shortfall = boundary_count - available.size();
                boundary_count = available.size();
                auto [field, view] = make_center_field(picked);
                record_center(select_with_niching(std::move(field), view, shortfall, cfg));
            }

            if (boundary_count > 0) {
                const auto& nb = neighbors->per_cluster[i];
                PriorityField field;
                field.kind = PriorityField::Kind::boundary;
                std::vector<std::size_t> local;
                for (std::size_t p : available) {
                    const double d1 = distance(features.row(p), model.centers[nb.nc1]);
                    const double d2 = distance(features.row(p), model.centers[nb.nc2]);
                    field.ids.push_back(model.member_ids[p]);
                    field.priorities.push_back(cluster_uncertainty(d1, d2, nb.d_ref1, nb.d_ref2));
                }
                FeatureView avail_view = features.subset(available);
                for (const auto& p : select_with_niching(std::move(field), avail_view,
                                                         boundary_count, cfg))
                    result.entries.push_back({p.id, i, QueryPass::boundary, p.priority});
            }
        }
    }
    return result;
}

}  // namespace alcs
