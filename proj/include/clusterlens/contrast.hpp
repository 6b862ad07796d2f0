#ifndef CLUSTERLENS_CONTRAST_HPP
#define CLUSTERLENS_CONTRAST_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "stats.hpp"

/**
 * @file contrast.hpp
 * @brief Contrastive scores for every (cluster, feature) pair and the rankings built from them.
 */

namespace clusterlens {

/**
 * Outcome of comparing one feature between a cluster and its reference group.
 * `degenerate` marks features where both groups have zero variance but different means;
 * these carry `t = +/-kSentinelT`, `p = kMinPValue` and `decimals = kDecimalCap`.
 */
struct ContrastScore {
    std::size_t feature_index = 0;
    std::string feature_name;
    double t = 0;
    double df = 0;
    double p = 1;
    int decimals = 0;
    bool degenerate = false;
};

/**
 * One-vs-rest scores for every cluster, stored row-major by cluster.
 */
struct ContrastMatrix {
    std::vector<std::string> clusters;
    std::vector<std::string> features;
    std::vector<ContrastScore> scores;

    const ContrastScore& at(std::size_t cluster, std::size_t feature) const {
        return scores[cluster * features.size() + feature];
    }
    std::span<const ContrastScore> row(std::size_t cluster) const {
        return {scores.data() + cluster * features.size(), features.size()};
    }
};

enum class RankMode { signed_t, absolute_t };

/// Parses `signed`, `absolute` or `auto`; `auto` yields an empty optional. Throws ArgumentError otherwise.
std::optional<RankMode> parse_rank_mode(std::string_view text);

std::string_view to_string(RankMode mode);

/**
 * Presence-type data: all values non-negative and more than half of them zero (bag-of-words style).
 */
bool is_presence_dataset(const Dataset& d);

/// Signed ranking for presence-type data, absolute ranking otherwise.
RankMode default_rank_mode(const Dataset& d);

RankMode resolve_rank_mode(const Dataset& d, std::optional<RankMode> requested);

struct FeatureRanking {
    std::size_t cluster_id = 0;
    std::string cluster;
    RankMode mode = RankMode::absolute_t;
    std::vector<ContrastScore> ordered;
    std::size_t top_k = 0;
};

/// Per-cluster scores for both sides of a cluster-vs-cluster comparison.
struct PairContrast {
    std::size_t first_cluster = 0;
    std::size_t second_cluster = 0;
    std::vector<ContrastScore> first;
    std::vector<ContrastScore> second;
};

struct ContrastOptions {
    /// Worker threads for matrix evaluation; 0 uses the hardware concurrency.
    unsigned threads = 1;
};

/**
 * Moments of feature `f` for each cluster, indexed by dense cluster id.
 */
std::vector<Moments> cluster_moments(const Dataset& d, std::size_t f);

/**
 * Scores one feature from the moments of the two groups, substituting the degenerate sentinel when needed.
 */
ContrastScore score_groups(const Moments& group, const Moments& reference, std::size_t feature_index, std::string feature_name);

std::vector<ContrastScore> contrast_one_vs_rest(const Dataset& d, std::size_t cluster_id);

/**
 * Compares the members of two clusters only; all other clusters are ignored.
 * `second` is the exact mirror of `first`: negated t, identical p.
 * Throws ArgumentError when both ids are the same.
 */
PairContrast contrast_pair(const Dataset& d, std::size_t first_cluster, std::size_t second_cluster);

ContrastMatrix full_matrix(const Dataset& d, const ContrastOptions& options = {});

/**
 * Orders scores by decreasing t (signed) or |t| (absolute), breaking ties by ascending feature index.
 * Degenerate scores rank above every finite score in absolute mode; in signed mode positive
 * sentinels come first and negative ones last. `top_k = min(k, size)`; throws ArgumentError if `k < 1`.
 */
FeatureRanking rank_features(std::span<const ContrastScore> scores, RankMode mode, std::size_t k);

inline constexpr std::size_t kDisplayedFeatures = 50;
inline constexpr std::size_t kPreselectedFeatures = 4;

/**
 * Data behind the feature-importance view of one cluster.
 * `displayed` and `preselected` are prefixes of the ranking; `context` lists every feature in index order.
 */
struct ImportancePayload {
    std::size_t cluster_id = 0;
    std::string cluster;
    RankMode mode = RankMode::absolute_t;
    std::vector<ContrastScore> displayed;
    std::vector<ContrastScore> preselected;
    std::vector<ContrastScore> context;
};

ImportancePayload importance_payload(const ContrastMatrix& matrix, std::size_t cluster_id, RankMode mode);
ImportancePayload importance_payload(const Dataset& d, std::size_t cluster_id, RankMode mode);

}

#endif
