#include "alcs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace alcs {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

Dataset load_dataset(const std::string& path, const LabelColumn& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty()) throw DataError("empty file: " + path);

    auto first = split_csv_line(lines[0]);
    const std::size_t arity = first.size();
    if (arity < 2) throw DataError("need at least one feature column and a label column");

    // Header detection: label by name requires one; otherwise a header is
    // assumed when any non-label cell of the first row is non-numeric.
    int label_idx = label_column.index;
    std::size_t data_start = 0;
    if (label_column.is_name()) {
        auto it = std::find(first.begin(), first.end(), label_column.name);
        if (it == first.end())
            throw DataError("label column '" + label_column.name + "' not found in header");
        label_idx = static_cast<int>(it - first.begin());
        data_start = 1;
    } else {
        if (label_idx < 0 || static_cast<std::size_t>(label_idx) >= arity)
            throw DataError("label column index out of range");
        // header iff every feature cell of the first row is non-numeric
        bool all_non_numeric = true;
        for (std::size_t c = 0; c < arity; ++c) {
            double tmp;
            if (static_cast<int>(c) != label_idx && parse_double(first[c], tmp))
                all_non_numeric = false;
        }
        if (all_non_numeric) data_start = 1;
    }
    if (data_start >= lines.size()) throw DataError("file has a header but no data rows");

    Dataset ds;
    ds.name = path;
    std::vector<std::string> raw_labels;
    for (std::size_t r = data_start; r < lines.size(); ++r) {
        auto cells = split_csv_line(lines[r]);
        if (cells.size() != arity)
            throw DataError("row " + std::to_string(r + 1) + ": expected " +
                            std::to_string(arity) + " columns, got " +
                            std::to_string(cells.size()));
        std::vector<double> feats;
        feats.reserve(arity - 1);
        for (std::size_t c = 0; c < arity; ++c) {
            if (static_cast<int>(c) == label_idx) continue;
            double v;
            if (!parse_double(cells[c], v))
                throw DataError("row " + std::to_string(r + 1) + ", column " +
                                std::to_string(c) + ": non-numeric feature '" + cells[c] + "'");
            feats.push_back(v);
        }
        ds.features.push_back(std::move(feats));
        raw_labels.push_back(cells[static_cast<std::size_t>(label_idx)]);
    }

    // map label strings to indices in sorted name order
    std::vector<std::string> names = raw_labels;
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    ds.class_names = names;
    ds.labels.reserve(raw_labels.size());
    for (const auto& s : raw_labels) {
        auto it = std::lower_bound(names.begin(), names.end(), s);
        ds.labels.push_back(static_cast<int>(it - names.begin()));
    }
    return ds;
}

Dataset normalize(const Dataset& ds, Normalization method) {
    if (ds.size() < 2) throw DataError("normalize requires at least 2 samples");
    if (method == Normalization::none) return ds;

    Dataset out = ds;
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();
    for (std::size_t c = 0; c < d; ++c) {
        if (method == Normalization::min_max) {
            double lo = ds.features[0][c], hi = lo;
            for (std::size_t r = 1; r < n; ++r) {
                lo = std::min(lo, ds.features[r][c]);
                hi = std::max(hi, ds.features[r][c]);
            }
            const double range = hi - lo;
            for (std::size_t r = 0; r < n; ++r)
                out.features[r][c] = range > 0 ? (ds.features[r][c] - lo) / range : 0.0;
        } else {
            double mean = 0;
            for (std::size_t r = 0; r < n; ++r) mean += ds.features[r][c];
            mean /= static_cast<double>(n);
            double var = 0;
            for (std::size_t r = 0; r < n; ++r) {
                const double dv = ds.features[r][c] - mean;
                var += dv * dv;
            }
            const double sd = std::sqrt(var / static_cast<double>(n));  // population sd
            for (std::size_t r = 0; r < n; ++r)
                out.features[r][c] = sd > 0 ? (ds.features[r][c] - mean) / sd : 0.0;
        }
    }
    out.normalization = method;
    return out;
}

double distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw ConfigError("distance: dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

PoolSplit split_pool(const Dataset& ds, unsigned seed, double test_fraction) {
    if (test_fraction <= 0 || test_fraction >= 1)
        throw ConfigError("test_fraction must lie in (0,1)");
    const std::size_t n = ds.size();
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
    if (n_test < 2 || n - n_test < 2) throw DataError("dataset too small to split");

    // group ids by class; unlabeled samples form their own group
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < n; ++i) by_class[ds.labels[i]].push_back(static_cast<int>(i));

    bool stratified = true;
    for (const auto& [cls, ids] : by_class)
        if (ids.size() < 2) stratified = false;

    PoolSplit split;
    split.seed = seed;
    split.stratified = stratified;
    std::mt19937 rng(seed);

    if (!stratified) {
        std::vector<int> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        split.test_ids.assign(ids.begin(), ids.begin() + static_cast<long>(n_test));
        split.unlabeled_ids.assign(ids.begin() + static_cast<long>(n_test), ids.end());
    } else {
        // per-class test quotas by largest remainder so the total hits n_test
        struct Quota { int cls; std::size_t base; double rem; std::size_t size; };
        std::vector<Quota> quotas;
        std::size_t assigned = 0;
        for (const auto& [cls, ids] : by_class) {
            const double exact = test_fraction * static_cast<double>(ids.size());
            const auto base = static_cast<std::size_t>(std::floor(exact));
            quotas.push_back({cls, base, exact - static_cast<double>(base), ids.size()});
            assigned += base;
        }
        std::stable_sort(quotas.begin(), quotas.end(), [](const Quota& a, const Quota& b) {
            if (a.rem != b.rem) return a.rem > b.rem;
            if (a.size != b.size) return a.size > b.size;
            return a.cls < b.cls;
        });
        while (assigned < n_test) {
            const std::size_t before = assigned;
            for (auto& q : quotas) {
                if (assigned >= n_test) break;
                if (q.base < q.size) { ++q.base; ++assigned; }
            }
            if (assigned == before) break;  // every class is exhausted
        }
        for (const auto& q : quotas) {
            auto ids = by_class[q.cls];
            std::shuffle(ids.begin(), ids.end(), rng);
            split.test_ids.insert(split.test_ids.end(), ids.begin(), ids.begin() + static_cast<long>(q.base));
            split.unlabeled_ids.insert(split.unlabeled_ids.end(), ids.begin() + static_cast<long>(q.base), ids.end());
        }
    }
    std::sort(split.test_ids.begin(), split.test_ids.end());
    std::sort(split.unlabeled_ids.begin(), split.unlabeled_ids.end());
    return split;
}

}  // namespace alcs
