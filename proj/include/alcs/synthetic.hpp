#ifndef ALCS_SYNTHETIC_HPP
#define ALCS_SYNTHETIC_HPP

#include <string>

#include "alcs/dataset.hpp"

namespace alcs {

struct BlobSpec {
    std::size_t num_blobs = 3;
    std::size_t num_points = 600;  // total, split evenly across blobs
    double overlap = 1.0;          // per-blob Gaussian sigma; centers sit on a radius-5 circle
};

/// 2-D Gaussian blobs with labels "c0".."c<k-1>", deterministic per seed.
Dataset make_blobs(const BlobSpec& spec, unsigned seed);

/// Parse "blobs:<c>:<n>:<overlap>".
BlobSpec parse_blob_spec(const std::string& s);

}  // namespace alcs

#endif
