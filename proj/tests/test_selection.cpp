#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "alcs/selection.hpp"
#include "alcs/synthetic.hpp"

using namespace alcs;

namespace {

// Minimal hand-built model: clusters laid out on a line, members at known
// distances from their center.
ClusterModel make_model(const std::vector<std::size_t>& sizes) {
    ClusterModel m;
    int id = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        m.centers.push_back({static_cast<double>(c) * 100.0});
        for (std::size_t j = 0; j < sizes[c]; ++j) {
            m.member_ids.push_back(id++);
            m.assignments.push_back(static_cast<int>(c));
            m.center_distances.push_back(static_cast<double>(j));
        }
        m.cluster_sizes.push_back(sizes[c]);
    }
    return m;
}

}  // namespace

TEST_CASE("cluster_representativeness analytic values") {
    CHECK(cluster_representativeness(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cluster_representativeness(std::log(3.0)) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(cluster_representativeness(-0.1), ConfigError);
}

TEST_CASE("cluster_representativeness is strictly decreasing") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 20);
    for (int t = 0; t < 100; ++t) {
        double d1 = u(rng), d2 = u(rng);
        if (d1 == d2) continue;
        if (d1 > d2) std::swap(d1, d2);
        CHECK(cluster_representativeness(d1) > cluster_representativeness(d2));
    }
}

TEST_CASE("cluster_uncertainty analytic values and monotonicity") {
    CHECK(cluster_uncertainty(1, 1, 1, 1) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));
    CHECK(cluster_uncertainty(3, 4, 2, 5) == doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));
    // limit toward 0.5 as d1+d2 -> 0
    CHECK(cluster_uncertainty(1e-12, 0, 1, 1) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cluster_uncertainty(1e-12, 0, 1, 1) < 0.5);
    CHECK_THROWS_AS(cluster_uncertainty(1, 1, 0, 0), ConfigError);
    CHECK_THROWS_AS(cluster_uncertainty(-1, 1, 1, 1), ConfigError);

    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0, 10);
    for (int t = 0; t < 100; ++t) {
        const double a = u(rng), b = u(rng);
        CHECK(cluster_uncertainty(std::min(a, b), 0, 2, 3) >=
              cluster_uncertainty(std::max(a, b), 0, 2, 3));
    }
}

TEST_CASE("cluster_uncertainty favors on-axis points between two centers") {
    // centers at (0,0) and (4,0), third at (2,3); for cluster 0 the neighbors
    // are those two. On-axis candidates beat equally-center-distant off-axis
    // candidates because their d1+d2 is smaller.
    const std::vector<double> nc1{4, 0}, nc2{2, 3};
    const double d_ref1 = 4, d_ref2 = std::sqrt(4.0 + 9.0);
    auto cu_at = [&](double x, double y) {
        const std::vector<double> p{x, y};
        return cluster_uncertainty(distance(p, nc1), distance(p, nc2), d_ref1, d_ref2);
    };
    for (double r : {1.0, 1.5, 2.0}) {
        const double on_axis = cu_at(r, 0);
        for (double theta : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
            const double off = cu_at(r * std::cos(theta), -std::abs(r * std::sin(theta)));
            CHECK(on_axis > off);
        }
    }
}

TEST_CASE("allocate_budget exact proportions") {
    const auto plan = allocate_budget(make_model({50, 50}), 10);
    CHECK(plan.per_cluster[0].total == 5);
    CHECK(plan.per_cluster[1].total == 5);
}

TEST_CASE("allocate_budget rounding") {
    const auto plan = allocate_budget(make_model({33, 67}), 10);
    CHECK(plan.per_cluster[0].total == 3);
    CHECK(plan.per_cluster[1].total == 7);
}

TEST_CASE("allocate_budget errors") {
    const auto m = make_model({5, 5});
    CHECK_THROWS_AS(allocate_budget(m, 0), ConfigError);
    CHECK_THROWS_AS(allocate_budget(m, 11), ConfigError);
    CHECK_THROWS_AS(allocate_budget(m, 4, 1.5), ConfigError);
}

TEST_CASE("allocate_budget repair property over 200 random configurations") {
    std::mt19937 rng(6);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<std::size_t> nc(1, 8), size(1, 60);
        std::vector<std::size_t> sizes;
        std::size_t n_u = 0;
        const std::size_t c = nc(rng);
        for (std::size_t i = 0; i < c; ++i) {
            sizes.push_back(size(rng));
            n_u += sizes.back();
        }
        std::uniform_int_distribution<std::size_t> nq(1, n_u);
        const std::size_t n_q = nq(rng);
        std::uniform_real_distribution<double> rho_dist(0, 1);
        const auto plan = allocate_budget(make_model(sizes), n_q, rho_dist(rng));

        std::size_t sum = 0;
        for (const auto& b : plan.per_cluster) {
            sum += b.total;
            CHECK(b.total <= sizes[b.cluster]);
            CHECK(b.center_count + b.boundary_count == b.total);
            CHECK(b.boundary_count <= (sizes[b.cluster] + 1) / 2);
        }
        CHECK(sum == n_q);
    }
}

TEST_CASE("allocate_budget forces rho to 0 for a single cluster") {
    const auto plan = allocate_budget(make_model({20}), 6, 0.9);
    CHECK(plan.per_cluster[0].rho == 0);
    CHECK(plan.per_cluster[0].boundary_count == 0);
    CHECK(plan.per_cluster[0].center_count == 6);
}

TEST_CASE("boundary_candidates takes the top-half center distances") {
    const auto m = make_model({6});  // distances 0..5
    const auto cb = boundary_candidates(m, 0);
    REQUIRE(cb.size() == 3);
    std::set<double> dists;
    for (auto p : cb) dists.insert(m.center_distances[p]);
    CHECK(dists == std::set<double>{3, 4, 5});
}

TEST_CASE("boundary_candidates on a singleton cluster") {
    const auto m = make_model({1});
    CHECK(boundary_candidates(m, 0).size() == 1);
}

TEST_CASE("boundary_candidates matches a sort-and-take oracle") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0, 5);
    ClusterModel m;
    m.centers = {{0.0}};
    const std::size_t n = 17;
    for (std::size_t i = 0; i < n; ++i) {
        m.member_ids.push_back(static_cast<int>(i));
        m.assignments.push_back(0);
        m.center_distances.push_back(u(rng));
    }
    m.cluster_sizes = {n};

    auto got = boundary_candidates(m, 0);
    std::vector<std::size_t> oracle(n);
    for (std::size_t i = 0; i < n; ++i) oracle[i] = i;
    std::sort(oracle.begin(), oracle.end(), [&](std::size_t a, std::size_t b) {
        if (m.center_distances[a] != m.center_distances[b])
            return m.center_distances[a] > m.center_distances[b];
        return a < b;
    });
    oracle.resize((n + 1) / 2);
    CHECK(got == oracle);
}

TEST_CASE("hybrid_select on a 3-blob synthetic") {
    const auto ds = make_blobs({3, 120, 0.4}, 12);
    const auto view = FeatureView::all_of(ds);
    const auto model = fps_cluster(view);
    REQUIRE(model.num_clusters() >= 2);
    const auto neighbors = neighboring_centers(model);
    const auto plan = allocate_budget(model, 12, 0.5);
    const auto qs = hybrid_select(model, &neighbors, plan, view);

    CHECK(qs.size() == 12);
    std::set<int> seen;
    for (const auto& e : qs.entries) seen.insert(e.id);
    CHECK(seen.size() == 12);  // no duplicates

    // boundary picks must lie in their cluster's recomputed CB shell
    for (const auto& e : qs.entries) {
        if (e.pass != QueryPass::boundary) continue;
        const auto cb = boundary_candidates(model, e.cluster);
        bool found = false;
        for (auto p : cb) found = found || model.member_ids[p] == e.id;
        CHECK(found);
    }

    // every cluster with a budget contributes exactly its share
    for (const auto& b : plan.per_cluster) {
        std::size_t got = 0;
        for (const auto& e : qs.entries)
            if (e.cluster == b.cluster) ++got;
        CHECK(got == b.total);
    }
}

TEST_CASE("hybrid_select center-pass argmax is the closest member") {
    const auto ds = make_blobs({2, 80, 0.5}, 9);
    const auto view = FeatureView::all_of(ds);
    const auto model = fps_cluster(view);
    REQUIRE(model.num_clusters() >= 1);
    QueryPlan plan;
    plan.total_budget = 1;
    plan.per_cluster.push_back({0, 1, 0, 1, 0.0});
    const auto qs = hybrid_select(model, nullptr, plan, view);
    REQUIRE(qs.size() == 1);

    // minimal center distance within cluster 0, ties by lower id
    const auto members = model.members_of(0);
    std::size_t best = members[0];
    for (auto p : members)
        if (model.center_distances[p] < model.center_distances[best]) best = p;
    CHECK(qs.entries[0].id == model.member_ids[best]);
    CHECK(qs.entries[0].priority == doctest::Approx(0.5));  // the center itself
}

TEST_CASE("hybrid_select with zero budget for a cluster") {
    const auto ds = make_blobs({2, 60, 0.4}, 3);
    const auto view = FeatureView::all_of(ds);
    const auto model = fps_cluster(view);
    REQUIRE(model.num_clusters() == 2);
    QueryPlan plan;
    plan.total_budget = 2;
    plan.per_cluster.push_back({0, 0, 0, 0, 0.5});
    plan.per_cluster.push_back({1, 2, 1, 1, 0.5});
    const auto neighbors = neighboring_centers(model);
    const auto qs = hybrid_select(model, &neighbors, plan, view);
    CHECK(qs.size() == 2);
    for (const auto& e : qs.entries) CHECK(e.cluster == 1);
}

TEST_CASE("priority ranges: initial CR and CU lie in (0, 0.5]") {
    std::mt19937 rng(14);
    std::uniform_real_distribution<double> u(0, 30);
    for (int t = 0; t < 500; ++t) {
        const double cr = cluster_representativeness(u(rng));
        CHECK(cr > 0);
        CHECK(cr <= 0.5);
        const double cu = cluster_uncertainty(u(rng), u(rng), 1 + u(rng), 1 + u(rng));
        CHECK(cu > 0);
        CHECK(cu < 0.5);
    }
}

TEST_CASE("budget conservation across randomized full selections") {
    std::mt19937 rng(20);
    for (int t = 0; t < 20; ++t) {
        std::uniform_int_distribution<std::size_t> blobs(1, 5);
        std::uniform_real_distribution<double> rho_dist(0, 1);
        const auto ds = make_blobs({blobs(rng), 100, 0.8}, rng());
        const auto view = FeatureView::all_of(ds);
        const auto model = fps_cluster(view);
        std::uniform_int_distribution<std::size_t> nq(1, ds.size() / 2);
        const std::size_t n_q = nq(rng);
        const auto plan = allocate_budget(model, n_q, rho_dist(rng));
        NeighborInfo neighbors;
        const NeighborInfo* nb = nullptr;
        if (model.num_clusters() >= 2) {
            neighbors = neighboring_centers(model);
            nb = &neighbors;
        }
        const auto qs = hybrid_select(model, nb, plan, view);
        CHECK(qs.size() == n_q);
        std::set<int> uniq;
        for (const auto& e : qs.entries) uniq.insert(e.id);
        CHECK(uniq.size() == n_q);
    }
}
