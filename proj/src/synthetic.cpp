#include "alcs/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace alcs {

Dataset make_blobs(const BlobSpec& spec, unsigned seed) {
    if (spec.num_blobs == 0 || spec.num_points < spec.num_blobs)
        throw ConfigError("make_blobs: need at least one point per blob");
    if (spec.overlap < 0) throw ConfigError("make_blobs: overlap must be nonnegative");

    Dataset ds;
    std::ostringstream name;
    name << "blobs:" << spec.num_blobs << ":" << spec.num_points << ":" << spec.overlap;
    ds.name = name.str();
    for (std::size_t c = 0; c < spec.num_blobs; ++c)
        ds.class_names.push_back("c" + std::to_string(c));

    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, spec.overlap);
    const double circle_radius = spec.num_blobs == 1 ? 0.0 : 5.0;

    for (std::size_t c = 0; c < spec.num_blobs; ++c) {
        const double angle =
            2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(spec.num_blobs);
        const double cx = circle_radius * std::cos(angle);
        const double cy = circle_radius * std::sin(angle);
        // remainder points go to the first blobs
        std::size_t count = spec.num_points / spec.num_blobs;
        if (c < spec.num_points % spec.num_blobs) ++count;
        for (std::size_t p = 0; p < count; ++p) {
            ds.features.push_back({cx + gauss(rng), cy + gauss(rng)});
            ds.labels.push_back(static_cast<int>(c));
        }
    }
    return ds;
}

BlobSpec parse_blob_spec(const std::string& s) {
    BlobSpec spec;
    std::string kind;
    char sep1, sep2, sep3;
    std::istringstream in(s);
    std::getline(in, kind, ':');
    if (kind != "blobs") throw ConfigError("unknown synthetic kind: " + s);
    std::istringstream rest(s.substr(kind.size()));
    if (!(rest >> sep1 >> spec.num_blobs >> sep2 >> spec.num_points >> sep3 >> spec.overlap) ||
        sep1 != ':' || sep2 != ':' || sep3 != ':')
        throw ConfigError("expected blobs:<c>:<n>:<overlap>, got: " + s);
    return spec;
}

}  // namespace alcs
