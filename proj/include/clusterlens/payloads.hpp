#ifndef CLUSTERLENS_PAYLOADS_HPP
#define CLUSTERLENS_PAYLOADS_HPP

#include <cstddef>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contrast.hpp"
#include "dataset.hpp"
#include "grid.hpp"

/**
 * @file payloads.hpp
 * @brief Canonical JSON payloads for one loaded dataset, shared by the CLI and the HTTP service.
 */

namespace clusterlens {

struct GridRequest {
    double width = 800;
    double height = 600;
    double cell_size = kDefaultCellSize;
    std::optional<Range> x_range;
    std::optional<Range> y_range;
    std::vector<std::size_t> selected;
};

/**
 * A dataset together with its contrast matrix, computed once at construction.
 *
 * Every method returns canonical JSON text (see `canonical_dump`), so two callers asking for the same
 * payload with the same parameters get byte-identical output. Importance payloads are cached per
 * (cluster, mode); the cache only stores what a fresh computation would return.
 * All methods are safe to call concurrently.
 */
class Analysis {
public:
    explicit Analysis(Dataset dataset, const ContrastOptions& options = {});

    const Dataset& dataset() const { return dataset_; }
    const ContrastMatrix& matrix() const { return matrix_; }
    RankMode default_mode() const { return default_mode_; }

    /// `{n, m, clusters, cluster_names, features, default_mode}`
    std::string summary_json() const;

    /// Importance payload for a cluster label; mode text is `signed`, `absolute` or `auto`.
    std::string contrast_json(std::string_view cluster, std::string_view mode);

    /// Uncached equivalent of `contrast_json`.
    std::string compute_contrast_json(std::string_view cluster, std::string_view mode) const;

    std::string pair_json(std::string_view first, std::string_view second, std::string_view mode) const;

    std::string matrix_json() const;

    /**
     * `{cluster, bins, histograms: [...]}` for the listed features (names or indices).
     * An empty list selects the cluster's preselected features under the default mode.
     */
    std::string histograms_json(std::string_view cluster, const std::vector<std::string>& features, std::size_t bins) const;

    std::string grid_json(const GridRequest& request) const;

    std::string topics_json(std::size_t terms) const;

    std::string coherence_sweep_json(std::size_t first, std::size_t last) const;

    /// Resolves a feature given by name or, failing that, by decimal index.
    std::size_t resolve_feature(std::string_view feature) const;

private:
    Dataset dataset_;
    ContrastMatrix matrix_;
    RankMode default_mode_;

    mutable std::mutex cache_mutex_;
    std::map<std::pair<std::size_t, RankMode>, std::string> contrast_cache_;
};

}

#endif
