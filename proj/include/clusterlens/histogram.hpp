#ifndef CLUSTERLENS_HISTOGRAM_HPP
#define CLUSTERLENS_HISTOGRAM_HPP

#include <cstddef>
#include <vector>

#include "dataset.hpp"

namespace clusterlens {

inline constexpr std::size_t kDefaultBins = 20;

/**
 * In-cluster and out-of-cluster relative frequencies of one feature over shared bins.
 */
struct HistogramPair {
    std::size_t feature_index = 0;
    std::vector<double> bin_edges;
    std::vector<double> in_cluster;
    std::vector<double> out_cluster;
};

/**
 * Equal-width bins spanning the feature's range over the whole dataset.
 * Bins are right-closed, `(e[i], e[i+1]]`, except the first which also includes the global minimum,
 * so a value on an interior edge lands in the lower bin.
 * A constant feature yields a single bin `[v, v + eps]` with both frequencies equal to 1.
 * Throws ArgumentError for `bins < 1` and LookupError for unknown cluster or feature.
 */
HistogramPair histogram_pair(const Dataset& d, std::size_t cluster_id, std::size_t feature, std::size_t bins = kDefaultBins);

}

#endif
