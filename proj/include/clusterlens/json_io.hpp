#ifndef CLUSTERLENS_JSON_IO_HPP
#define CLUSTERLENS_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "contrast.hpp"
#include "grid.hpp"
#include "histogram.hpp"
#include "topics.hpp"

/**
 * @file json_io.hpp
 * @brief JSON forms of the library's result types and the canonical text encoding.
 */

namespace clusterlens {

/**
 * Serializes with object keys sorted, no whitespace, integers verbatim and floating-point
 * numbers printed with 17 significant digits (`%.17g`), so equal values always give identical bytes.
 */
std::string canonical_dump(const nlohmann::json& value);

/// `{index, feature, t, df, p, decimals, degenerate}`
nlohmann::json to_json(const ContrastScore& score);

/// `{clusters, features, cells: [{t, p, decimals, degenerate}]}`, cells row-major by cluster.
nlohmann::json to_json(const ContrastMatrix& matrix);

/// `{cluster, mode, top_k, ordered: [score]}`
nlohmann::json to_json(const FeatureRanking& ranking);

/// `{cluster, mode, displayed: [score], preselected: [index], context: [{index, p, decimals}]}`
nlohmann::json to_json(const ImportancePayload& payload);

/**
 * `{clusters: [a, b], mode, features, first: [cell], second: [cell], preselected: {first, second}}`.
 * Each side's preselection is the top of its own ranking under `mode`.
 */
nlohmann::json to_json(const PairContrast& pair, const Dataset& d, RankMode mode);

/// `{feature, index, edges, in, out}`
nlohmann::json to_json(const HistogramPair& pair, const Dataset& d);

/// `{cols, rows, cell_size, selected, cells: [{c, r, segments: [{f, frac, opacity}], empty}]}`
nlohmann::json to_json(const GridLayout& grid, const CellSums& sums, const std::vector<CellSegments>& segments);

/// `{topics: [{cluster, terms}], coherence: {per_topic: [{cluster, coherence}], mean, m}, clamped}`
nlohmann::json to_json(const TopicSet& topics, const CoherenceReport& report);

/// `{sweep: [{m, mean, per_topic}], auc}`
nlohmann::json to_json(const CoherenceSweep& sweep);

}

#endif
