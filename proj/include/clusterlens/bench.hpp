#ifndef CLUSTERLENS_BENCH_HPP
#define CLUSTERLENS_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "dataset.hpp"

/**
 * @file bench.hpp
 * @brief Timing harness for the full contrast matrix on synthetic data.
 */

namespace clusterlens {

/**
 * Gaussian data with `clusters` labels assigned round-robin. Each (cluster, feature) pair
 * gets its own mean shift so that contrasts are non-trivial. Coordinates are random.
 */
Dataset synthetic_dataset(std::size_t samples, std::size_t features, std::size_t clusters, std::uint64_t seed);

struct BenchConfig {
    std::vector<std::size_t> samples{2000, 10000, 40000};
    std::vector<std::size_t> features{10, 100, 500, 2000};
    std::size_t clusters = 8;
    std::uint64_t seed = 42;
    std::size_t repetitions = 3;
    std::size_t threads = 1;
};

struct BenchPoint {
    std::size_t samples = 0;
    std::size_t features = 0;
    std::size_t clusters = 0;
    /// Median wall time over the repetitions.
    double seconds = 0;
};

struct LinearFit {
    /// Seconds per unit of n * m * k.
    double slope = 0;
    double r_squared = 0;
};

std::vector<BenchPoint> run_bench(const BenchConfig& config);

/// Least squares through the origin of seconds against n * m * k; R^2 is the centered one.
LinearFit fit_linear(const std::vector<BenchPoint>& points);

/// CSV with header `n,m,k_clusters,seconds`.
void write_bench_csv(const std::vector<BenchPoint>& points, std::ostream& out);

/**
 * Either a comma-separated list ("10,100,500") or a range "a:b" expanded to `steps`
 * geometrically spaced integers including both ends.
 */
std::vector<std::size_t> parse_size_list(std::string_view text, std::size_t steps = 4);

}

#endif
