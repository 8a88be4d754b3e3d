#include "alcs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace alcs {

namespace {

// Mean pairwise Euclidean distance. For very large views a deterministic
// uniform stride subsample keeps this O(limit^2).
double mean_pairwise_distance(const FeatureView& v, std::size_t limit) {
    const std::size_t n = v.size();
    std::vector<std::size_t> pos;
    if (n <= limit) {
        pos.resize(n);
        std::iota(pos.begin(), pos.end(), std::size_t{0});
    } else {
        pos.reserve(limit);
        const double stride = static_cast<double>(n) / static_cast<double>(limit);
        for (std::size_t i = 0; i < limit; ++i)
            pos.push_back(static_cast<std::size_t>(static_cast<double>(i) * stride));
    }
    const std::size_t m = pos.size();
    if (m < 2) return 0.0;
    double sum = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            sum += distance(v.row(pos[i]), v.row(pos[j]));
    return sum / (static_cast<double>(m) * static_cast<double>(m - 1) / 2.0);
}

}  // namespace

std::vector<std::size_t> ClusterModel::members_of(std::size_t i) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < assignments.size(); ++p)
        if (static_cast<std::size_t>(assignments[p]) == i) out.push_back(p);
    std::sort(out.begin(), out.end(), [this](std::size_t a, std::size_t b) {
        return member_ids[a] < member_ids[b];
    });
    return out;
}

std::vector<double> estimate_density(const FeatureView& features) {
    const std::size_t n = features.size();
    if (n < 2) throw DataError("estimate_density requires at least 2 samples");

    const double mean_dist = mean_pairwise_distance(features, 20000);
    const double sigma = mean_dist / std::sqrt(2.0 * std::log(static_cast<double>(n)));

    std::vector<double> density(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            const double d = distance(features.row(j), features.row(k));
            double w;
            if (sigma > 0) {
                w = std::exp(-(d * d) / (2.0 * sigma * sigma));
            } else {
                w = d == 0 ? 1.0 : 0.0;  // all-coincident degenerate case
            }
            density[j] += w;
            density[k] += w;
        }
    }
    return density;
}

ClusterModel fps_cluster(const FeatureView& features, const ClusteringConfig& cfg) {
    const std::size_t n = features.size();
    std::vector<double> work = estimate_density(features);
    const double radius = mean_pairwise_distance(features, cfg.subsample_limit);

    const double initial_max = *std::max_element(work.begin(), work.end());
    const double floor = cfg.stop_threshold * initial_max;

    // Iterative peak selection with fitness-proportionate suppression:
    // each new center scales nearby densities by (dist/R)^2, clamped to [0,1].
    std::vector<std::size_t> center_pos;
    while (true) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < n; ++j) {
            if (work[j] > work[best] ||
                (work[j] == work[best] && features.id(j) < features.id(best)))
                best = j;
        }
        if (!center_pos.empty() && work[best] < floor) break;
        center_pos.push_back(best);
        for (std::size_t j = 0; j < n; ++j) {
            const double d = distance(features.row(j), features.row(best));
            double f;
            if (radius > 0) {
                f = std::min(1.0, (d / radius) * (d / radius));
            } else {
                f = d == 0 ? 0.0 : 1.0;
            }
            work[j] *= f;
        }
        if (center_pos.size() == n) break;
    }

    ClusterModel model;
    model.member_ids = features.ids();
    for (std::size_t c : center_pos) {
        auto row = features.row(c);
        model.centers.emplace_back(row.begin(), row.end());
    }
    model.assignments.resize(n);
    model.center_distances.resize(n);
    model.cluster_sizes.assign(model.centers.size(), 0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best_c = 0;
        double best_d = distance(features.row(j), model.centers[0]);
        for (std::size_t c = 1; c < model.centers.size(); ++c) {
            const double d = distance(features.row(j), model.centers[c]);
            if (d < best_d) {
                best_d = d;
                best_c = c;
            }
        }
        model.assignments[j] = static_cast<int>(best_c);
        model.center_distances[j] = best_d;
        ++model.cluster_sizes[best_c];
    }
    return model;
}

NeighborInfo neighboring_centers(const ClusterModel& model) {
    const std::size_t c = model.num_clusters();
    if (c < 2) throw DataError("neighboring_centers requires at least 2 clusters");

    NeighborInfo info;
    info.per_cluster.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        std::vector<std::pair<double, std::size_t>> others;
        for (std::size_t j = 0; j < c; ++j) {
            if (j == i) continue;
            others.emplace_back(distance(model.centers[i], model.centers[j]), j);
        }
        std::sort(others.begin(), others.end());
        auto& e = info.per_cluster[i];
        e.nc1 = others[0].second;
        e.d_ref1 = others[0].first;
        if (others.size() >= 2) {
            e.nc2 = others[1].second;
            e.d_ref2 = others[1].first;
        } else {
            // c == 2: the sole other center fills both slots
            e.nc2 = e.nc1;
            e.d_ref2 = e.d_ref1;
        }
    }
    return info;
}

}  // namespace alcs
