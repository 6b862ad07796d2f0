#ifndef CLUSTERLENS_TESTS_SUPPORT_HPP
#define CLUSTERLENS_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clusterlens/dataset.hpp"

namespace support {

inline std::vector<std::string> names(std::size_t m, const std::string& prefix = "f") {
    std::vector<std::string> out;
    for (std::size_t f = 0; f < m; ++f) {
        out.push_back(prefix + std::to_string(f));
    }
    return out;
}

inline std::vector<clusterlens::Point2> line_coords(std::size_t n) {
    std::vector<clusterlens::Point2> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({static_cast<double>(i), static_cast<double>(i % 7)});
    }
    return out;
}

/// Single-feature dataset from values and labels, with placeholder coordinates.
inline clusterlens::Dataset one_feature(const std::vector<double>& values, const std::vector<std::string>& labels) {
    return clusterlens::Dataset({"f0"}, values, line_coords(values.size()), labels);
}

/**
 * Random dataset with `k` clusters of uneven sizes, per-cluster mean shifts and varied scales.
 */
inline clusterlens::Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k) {
    std::normal_distribution<double> z(0, 1);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        // First 2k rows guarantee every cluster has at least two members.
        labels[i] = "k" + std::to_string(i < 2 * k ? i % k : rng() % k);
    }
    std::vector<double> shifts(m * k);
    for (auto& s : shifts) {
        s = u(rng);
    }
    std::vector<double> values(n * m);
    for (std::size_t f = 0; f < m; ++f) {
        const double scale = std::exp(u(rng));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = std::stoul(labels[i].substr(1));
            values[f * n + i] = scale * (z(rng) + shifts[f * k + c]);
        }
    }
    std::vector<clusterlens::Point2> coords(n);
    for (auto& p : coords) {
        p = {u(rng) * 10, u(rng) * 3};
    }
    return clusterlens::Dataset(names(m), std::move(values), std::move(coords), labels);
}

}

#endif
