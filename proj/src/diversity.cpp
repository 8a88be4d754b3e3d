#include "alcs/diversity.hpp"

#include <algorithm>
#include <cmath>

namespace alcs {

NicheConfig niche_radius(const FeatureView& member_features) {
    const std::size_t m = member_features.size();
    NicheConfig cfg;
    if (m < 2) return cfg;  // singleton: radius 0

    auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
    cfg.k = std::clamp<std::size_t>(k, 1, m - 1);

    double total = 0;
    std::vector<double> dists(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t w = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) dists[w++] = distance(member_features.row(i), member_features.row(j));
        std::nth_element(dists.begin(), dists.begin() + static_cast<long>(cfg.k) - 1, dists.end());
        double s = 0;
        for (std::size_t t = 0; t < cfg.k; ++t) s += dists[t];
        total += s / static_cast<double>(cfg.k);
    }
    cfg.radius = total / static_cast<double>(m);
    return cfg;
}

std::vector<NichedPick> select_with_niching(PriorityField field,
                                            const FeatureView& features,
                                            std::size_t count,
                                            const NicheConfig& cfg) {
    const std::size_t n = field.size();
    if (count > n) throw ConfigError("select_with_niching: count exceeds available samples");

    std::vector<bool> taken(n, false);
    std::vector<NichedPick> picks;
    picks.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (taken[j]) continue;
            if (best == n || field.priorities[j] > field.priorities[best] ||
                (field.priorities[j] == field.priorities[best] && field.ids[j] < field.ids[best]))
                best = j;
        }
        taken[best] = true;
        picks.push_back({field.ids[best], field.priorities[best]});

        // share priorities inside the niche of the pick
        std::vector<std::size_t> niche;
        double sum = field.priorities[best];
        for (std::size_t j = 0; j < n; ++j) {
            if (taken[j]) continue;
            if (distance(features.row(j), features.row(best)) <= cfg.radius) {
                niche.push_back(j);
                sum += field.priorities[j];
            }
        }
        const double share = std::max(1.0, sum);
        for (std::size_t j : niche) field.priorities[j] /= share;
    }
    return picks;
}

}  // namespace alcs
