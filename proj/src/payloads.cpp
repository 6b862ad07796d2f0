#include "clusterlens/payloads.hpp"

#include <charconv>

#include "clusterlens/errors.hpp"
#include "clusterlens/histogram.hpp"
#include "clusterlens/json_io.hpp"
#include "clusterlens/topics.hpp"

namespace clusterlens {

using nlohmann::json;

Analysis::Analysis(Dataset dataset, const ContrastOptions& options)
    : dataset_(std::move(dataset)), matrix_(full_matrix(dataset_, options)), default_mode_(default_rank_mode(dataset_)) {}

std::string Analysis::summary_json() const {
    return canonical_dump({
        {"n", dataset_.n()},
        {"m", dataset_.m()},
        {"clusters", dataset_.cluster_count()},
        {"cluster_names", dataset_.cluster_names()},
        {"features", dataset_.feature_names()},
        {"default_mode", to_string(default_mode_)},
    });
}

std::string Analysis::compute_contrast_json(std::string_view cluster, std::string_view mode) const {
    const auto resolved = parse_rank_mode(mode).value_or(default_mode_);
    const auto id = dataset_.cluster_id(cluster);
    return canonical_dump(to_json(importance_payload(matrix_, id, resolved)));
}

std::string Analysis::contrast_json(std::string_view cluster, std::string_view mode) {
    const auto resolved = parse_rank_mode(mode).value_or(default_mode_);
    const auto id = dataset_.cluster_id(cluster);
    {
        std::lock_guard lock(cache_mutex_);
        auto it = contrast_cache_.find({id, resolved});
        if (it != contrast_cache_.end()) {
            return it->second;
        }
    }
    auto body = canonical_dump(to_json(importance_payload(matrix_, id, resolved)));
    std::lock_guard lock(cache_mutex_);
    return contrast_cache_.try_emplace({id, resolved}, std::move(body)).first->second;
}

std::string Analysis::pair_json(std::string_view first, std::string_view second, std::string_view mode) const {
    const auto resolved = parse_rank_mode(mode).value_or(default_mode_);
    const auto a = dataset_.cluster_id(first);
    const auto b = dataset_.cluster_id(second);
    return canonical_dump(to_json(contrast_pair(dataset_, a, b), dataset_, resolved));
}

std::string Analysis::matrix_json() const {
    return canonical_dump(to_json(matrix_));
}

std::size_t Analysis::resolve_feature(std::string_view feature) const {
    const auto& names = dataset_.feature_names();
    for (std::size_t f = 0; f < names.size(); ++f) {
        if (names[f] == feature) {
            return f;
        }
    }
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(feature.data(), feature.data() + feature.size(), index);
    if (ec == std::errc() && ptr == feature.data() + feature.size() && index < dataset_.m()) {
        return index;
    }
    throw LookupError("unknown feature '" + std::string(feature) + "'");
}

std::string Analysis::histograms_json(std::string_view cluster, const std::vector<std::string>& features, std::size_t bins) const {
    const auto id = dataset_.cluster_id(cluster);
    std::vector<std::size_t> indices;
    if (features.empty()) {
        for (const auto& s : importance_payload(matrix_, id, default_mode_).preselected) {
            indices.push_back(s.feature_index);
        }
    } else {
        for (const auto& f : features) {
            indices.push_back(resolve_feature(f));
        }
    }

    json list = json::array();
    for (auto f : indices) {
        list.push_back(to_json(histogram_pair(dataset_, id, f, bins), dataset_));
    }
    return canonical_dump({{"cluster", dataset_.cluster_name(id)}, {"bins", bins}, {"histograms", std::move(list)}});
}

std::string Analysis::grid_json(const GridRequest& request) const {
    auto viewport = Viewport::fit(dataset_, request.width, request.height, request.cell_size);
    if (request.x_range) {
        viewport.x_range = *request.x_range;
    }
    if (request.y_range) {
        viewport.y_range = *request.y_range;
    }
    const auto grid = build_grid(dataset_, viewport);
    const auto sums = cell_feature_sums(grid, dataset_, request.selected);
    return canonical_dump(to_json(grid, sums, cell_segments(grid, sums)));
}

std::string Analysis::topics_json(std::size_t terms) const {
    const auto topics = extract_topics(dataset_, matrix_, terms);
    const CooccurrenceIndex index(dataset_);
    return canonical_dump(to_json(topics, coherence_report(topics, index)));
}

std::string Analysis::coherence_sweep_json(std::size_t first, std::size_t last) const {
    return canonical_dump(to_json(coherence_sweep(dataset_, matrix_, first, last)));
}

}
