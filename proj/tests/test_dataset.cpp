#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "alcs/dataset.hpp"

using namespace alcs;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = "/tmp/" + name;
    std::ofstream out(path, std::ios::trunc);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("load_dataset parses a small CSV") {
    const auto path = write_temp("alcs_small.csv", "1,2,A\n3,4,B\n5,6,A\n");
    const auto ds = load_dataset(path, LabelColumn::by_index(2));
    CHECK(ds.size() == 3);
    CHECK(ds.dim() == 2);
    CHECK(ds.class_names == std::vector<std::string>{"A", "B"});
    CHECK(ds.labels == std::vector<int>{0, 1, 0});
    CHECK(ds.features[1] == std::vector<double>{3, 4});
}

TEST_CASE("load_dataset detects a header row and label by name") {
    const auto path = write_temp("alcs_header.csv", "x,y,cls\n1,2,A\n3,4,B\n");
    const auto ds = load_dataset(path, LabelColumn::by_name("cls"));
    CHECK(ds.size() == 2);
    CHECK(ds.class_names.size() == 2);

    const auto by_idx = load_dataset(path, LabelColumn::by_index(2));
    CHECK(by_idx.size() == 2);  // header auto-detected from non-numeric cells
}

TEST_CASE("load_dataset reports the offending row on arity mismatch") {
    std::string content;
    for (int i = 1; i <= 6; ++i) content += "1,2,A\n";
    content += "1,2\n";  // row 7
    const auto path = write_temp("alcs_bad.csv", content);
    CHECK_THROWS_WITH_AS(load_dataset(path, LabelColumn::by_index(2)),
                         doctest::Contains("row 7"), DataError);
}

TEST_CASE("load_dataset error cases") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/file.csv", LabelColumn::by_index(0)), DataError);
    const auto empty = write_temp("alcs_empty.csv", "");
    CHECK_THROWS_AS(load_dataset(empty, LabelColumn::by_index(0)), DataError);
    const auto bad = write_temp("alcs_nonnum.csv", "1,x,A\n2,3,B\n");
    CHECK_THROWS_AS(load_dataset(bad, LabelColumn::by_index(2)), DataError);
}

TEST_CASE("min-max normalization") {
    Dataset ds;
    ds.features = {{0, 2}, {5, 2}, {10, 2}};
    ds.labels = {0, 0, 0};
    ds.class_names = {"a"};
    const auto out = normalize(ds, Normalization::min_max);
    CHECK(out.features[0][0] == doctest::Approx(0));
    CHECK(out.features[1][0] == doctest::Approx(0.5));
    CHECK(out.features[2][0] == doctest::Approx(1));
    // constant column maps to 0
    CHECK(out.features[0][1] == 0);
    CHECK(out.features[2][1] == 0);
    CHECK(out.normalization == Normalization::min_max);
}

TEST_CASE("z-score normalization uses the population sd") {
    Dataset ds;
    ds.features = {{1}, {3}};
    ds.labels = {0, 0};
    const auto out = normalize(ds, Normalization::z_score);
    CHECK(out.features[0][0] == doctest::Approx(-1));
    CHECK(out.features[1][0] == doctest::Approx(1));
}

TEST_CASE("normalize is idempotent") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-5, 9);
    Dataset ds;
    for (int i = 0; i < 40; ++i) ds.features.push_back({u(rng), u(rng), u(rng)});
    ds.labels.assign(40, 0);
    for (auto method : {Normalization::min_max, Normalization::z_score}) {
        const auto once = normalize(ds, method);
        const auto twice = normalize(once, method);
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (std::size_t c = 0; c < ds.dim(); ++c)
                CHECK(twice.features[i][c] == doctest::Approx(once.features[i][c]).epsilon(1e-9));
    }
}

TEST_CASE("distance basics") {
    const std::vector<double> a{0, 0}, b{3, 4};
    CHECK(distance(a, b) == doctest::Approx(5));
    CHECK(distance(a, a) == 0);
    const std::vector<double> c{1, 2, 3};
    CHECK_THROWS_AS(distance(a, c), ConfigError);
}

TEST_CASE("distance matches brute-force recomputation on random vectors") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> a(10), b(10);
        for (auto& v : a) v = u(rng);
        for (auto& v : b) v = u(rng);
        long double s = 0;
        for (int i = 0; i < 10; ++i) s += (static_cast<long double>(a[i]) - b[i]) * (a[i] - b[i]);
        CHECK(std::abs(distance(a, b) - std::sqrt(static_cast<double>(s))) < 1e-12);
    }
}

TEST_CASE("distance satisfies the triangle inequality on sampled triples") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> a(4), b(4), c(4);
        for (auto& v : a) v = u(rng);
        for (auto& v : b) v = u(rng);
        for (auto& v : c) v = u(rng);
        CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
        CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
    }
}

TEST_CASE("split_pool arithmetic and determinism") {
    Dataset ds;
    for (int i = 0; i < 100; ++i) {
        ds.features.push_back({static_cast<double>(i)});
        ds.labels.push_back(i % 2);
    }
    ds.class_names = {"a", "b"};

    const auto s1 = split_pool(ds, 7, 0.3);
    CHECK(s1.test_ids.size() == 30);
    CHECK(s1.unlabeled_ids.size() == 70);
    CHECK(s1.labeled_ids.empty());
    CHECK(s1.stratified);

    const auto s2 = split_pool(ds, 7, 0.3);
    CHECK(s1.test_ids == s2.test_ids);
    CHECK(s1.unlabeled_ids == s2.unlabeled_ids);

    // stratification: 15 test samples per class
    int per_class[2] = {0, 0};
    for (int id : s1.test_ids) ++per_class[ds.labels[static_cast<std::size_t>(id)]];
    CHECK(per_class[0] == 15);
    CHECK(per_class[1] == 15);
}

TEST_CASE("split_pool partition property over random configurations") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> n_dist(10, 200);
    std::uniform_real_distribution<double> f_dist(0.15, 0.6);
    int runs = 0;
    while (runs < 100) {
        const int n = n_dist(rng);
        const double f = f_dist(rng);
        const auto n_test = static_cast<long>(std::llround(f * n));
        if (n_test < 2 || n - n_test < 2) continue;
        ++runs;
        Dataset ds;
        for (int i = 0; i < n; ++i) {
            ds.features.push_back({static_cast<double>(i)});
            ds.labels.push_back(i % 3);
        }
        ds.class_names = {"a", "b", "c"};
        const auto split = split_pool(ds, rng(), f);
        std::set<int> seen(split.test_ids.begin(), split.test_ids.end());
        seen.insert(split.unlabeled_ids.begin(), split.unlabeled_ids.end());
        seen.insert(split.labeled_ids.begin(), split.labeled_ids.end());
        CHECK(seen.size() ==
              split.test_ids.size() + split.unlabeled_ids.size() + split.labeled_ids.size());
        CHECK(seen.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("split_pool rejects tiny datasets") {
    Dataset ds;
    ds.features = {{1}, {2}, {3}};
    ds.labels = {0, 0, 0};
    CHECK_THROWS_AS(split_pool(ds, 1, 0.3), DataError);
}
