#ifndef CLUSTERLENS_DATASET_HPP
#define CLUSTERLENS_DATASET_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

/**
 * @file dataset.hpp
 * @brief Input dataset: feature matrix, projected coordinates and cluster labels.
 */

namespace clusterlens {

struct Point2 {
    double x = 0;
    double y = 0;
};

/**
 * Column roles of a delimited input file.
 * Features are either listed explicitly or taken as every column that is not the label or a coordinate.
 */
struct Schema {
    std::string label_col;
    std::string x_col;
    std::string y_col;
    std::vector<std::string> feature_cols;
    bool rest = false;

    /**
     * Accepts `{"label_col": ..., "x_col": ..., "y_col": ..., "feature_cols": [...] | "rest"}`.
     * A missing `feature_cols` is treated as `"rest"`.
     */
    static Schema from_json(const nlohmann::json& config);
};

Schema load_schema(const std::filesystem::path& path);

/**
 * Immutable n-by-m dataset with 2D coordinates and cluster labels.
 *
 * Values are stored column-major so that each feature is a contiguous span.
 * Cluster labels are arbitrary strings; they are mapped to dense integer ids in order of first appearance.
 * The constructor enforces all invariants: consistent dimensions, finite values and coordinates,
 * unique feature names, at least two clusters and at least two members per cluster.
 */
class Dataset {
public:
    Dataset(std::vector<std::string> feature_names,
            std::vector<double> column_major_values,
            std::vector<Point2> coords,
            const std::vector<std::string>& labels);

    /// Convenience constructor from row-major nested vectors.
    static Dataset from_rows(std::vector<std::string> feature_names,
                             const std::vector<std::vector<double>>& rows,
                             std::vector<Point2> coords,
                             const std::vector<std::string>& labels);

    std::size_t n() const { return coords_.size(); }
    std::size_t m() const { return feature_names_.size(); }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::string& feature_name(std::size_t f) const { return feature_names_.at(f); }

    /// Index of a feature by name; throws LookupError when absent.
    std::size_t feature_index(std::string_view name) const;

    std::span<const double> column(std::size_t f) const {
        return {values_.data() + f * n(), n()};
    }
    double value(std::size_t row, std::size_t f) const { return values_[f * n() + row]; }

    std::span<const Point2> coords() const { return coords_; }

    /// Dense cluster id of each row.
    std::span<const std::size_t> labels() const { return labels_; }

    std::size_t cluster_count() const { return cluster_names_.size(); }
    const std::vector<std::string>& cluster_names() const { return cluster_names_; }
    const std::string& cluster_name(std::size_t id) const { return cluster_names_.at(id); }
    const std::vector<std::size_t>& cluster_sizes() const { return cluster_sizes_; }

    /// Dense id of a cluster label; throws LookupError when absent.
    std::size_t cluster_id(std::string_view name) const;

private:
    std::vector<std::string> feature_names_;
    std::vector<double> values_;
    std::vector<Point2> coords_;
    std::vector<std::size_t> labels_;
    std::vector<std::string> cluster_names_;
    std::vector<std::size_t> cluster_sizes_;
};

/**
 * Membership partition for one cluster.
 */
struct ClusterView {
    std::size_t cluster_id = 0;
    std::vector<std::size_t> member_indices;
    std::vector<std::size_t> complement_indices;
};

ClusterView cluster_view(const Dataset& d, std::size_t cluster_id);
ClusterView cluster_view(const Dataset& d, std::string_view cluster_name);

/**
 * Parse delimited text with a header row.
 * Throws SchemaError for missing columns, ParseError for malformed or missing cells
 * and ValidationError for non-finite values or undersized clusters.
 */
Dataset parse_dataset(std::string_view text, char delimiter, const Schema& schema);

/// Reads a CSV or TSV file; the delimiter is chosen from the extension (`.tsv`/`.tab` use tabs).
Dataset load_dataset(const std::filesystem::path& path, const Schema& schema);

char delimiter_for(const std::filesystem::path& path);

}

#endif
