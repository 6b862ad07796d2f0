#include "clusterlens/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clusterlens/errors.hpp"

namespace clusterlens {

namespace {

std::size_t bin_of(double v, const std::vector<double>& edges, double lo, double width) {
    const std::size_t bins = edges.size() - 1;
    double raw = std::ceil((v - lo) / width) - 1;
    std::size_t idx = raw < 0 ? 0 : std::min(bins - 1, static_cast<std::size_t>(raw));
    while (idx > 0 && v <= edges[idx]) {
        --idx;
    }
    while (idx + 1 < bins && v > edges[idx + 1]) {
        ++idx;
    }
    return idx;
}

}

HistogramPair histogram_pair(const Dataset& d, std::size_t cluster_id, std::size_t feature, std::size_t bins) {
    if (bins < 1) {
        throw ArgumentError("bins must be at least 1");
    }
    if (cluster_id >= d.cluster_count()) {
        throw LookupError("unknown cluster id " + std::to_string(cluster_id));
    }
    if (feature >= d.m()) {
        throw LookupError("unknown feature index " + std::to_string(feature));
    }

    const auto column = d.column(feature);
    const auto labels = d.labels();
    const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    HistogramPair out;
    out.feature_index = feature;

    if (lo == hi) {
        const double eps = 1e-9 * std::max(1.0, std::abs(lo));
        out.bin_edges = {lo, lo + eps};
        out.in_cluster = {1.0};
        out.out_cluster = {1.0};
        return out;
    }

    const double width = (hi - lo) / static_cast<double>(bins);
    out.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        out.bin_edges[i] = lo + width * static_cast<double>(i);
    }
    out.bin_edges.back() = hi;
    if (std::adjacent_find(out.bin_edges.begin(), out.bin_edges.end(), std::greater_equal<>()) != out.bin_edges.end()) {
        // Range too narrow to resolve this many distinct edges in double precision.
        return histogram_pair(d, cluster_id, feature, bins / 2);
    }

    std::vector<std::size_t> in_counts(bins, 0);
    std::vector<std::size_t> out_counts(bins, 0);
    std::size_t in_total = 0;
    for (std::size_t i = 0; i < column.size(); ++i) {
        const std::size_t b = bin_of(column[i], out.bin_edges, lo, width);
        if (labels[i] == cluster_id) {
            ++in_counts[b];
            ++in_total;
        } else {
            ++out_counts[b];
        }
    }
    const std::size_t out_total = column.size() - in_total;

    out.in_cluster.resize(bins);
    out.out_cluster.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out.in_cluster[b] = static_cast<double>(in_counts[b]) / static_cast<double>(in_total);
        out.out_cluster[b] = static_cast<double>(out_counts[b]) / static_cast<double>(out_total);
    }
    return out;
}

}
