#include "clusterlens/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "clusterlens/errors.hpp"

namespace clusterlens {

std::optional<RankMode> parse_rank_mode(std::string_view text) {
    if (text == "signed") {
        return RankMode::signed_t;
    }
    if (text == "absolute") {
        return RankMode::absolute_t;
    }
    if (text == "auto" || text.empty()) {
        return std::nullopt;
    }
    throw ArgumentError("unknown ranking mode '" + std::string(text) + "' (expected signed, absolute or auto)");
}

std::string_view to_string(RankMode mode) {
    return mode == RankMode::signed_t ? "signed" : "absolute";
}

bool is_presence_dataset(const Dataset& d) {
    std::size_t zeros = 0;
    for (std::size_t f = 0; f < d.m(); ++f) {
        for (double v : d.column(f)) {
            if (v < 0) {
                return false;
            }
            zeros += (v == 0);
        }
    }
    return 2 * zeros > d.n() * d.m();
}

RankMode default_rank_mode(const Dataset& d) {
    return is_presence_dataset(d) ? RankMode::signed_t : RankMode::absolute_t;
}

RankMode resolve_rank_mode(const Dataset& d, std::optional<RankMode> requested) {
    return requested ? *requested : default_rank_mode(d);
}

std::vector<Moments> cluster_moments(const Dataset& d, std::size_t f) {
    const auto column = d.column(f);
    const auto labels = d.labels();
    const std::size_t k = d.cluster_count();

    std::vector<Moments> out(k);
    std::vector<double> sums(k, 0.0);
    for (std::size_t i = 0; i < column.size(); ++i) {
        auto& mo = out[labels[i]];
        const double v = column[i];
        ++mo.count;
        sums[labels[i]] += v;
        mo.min = std::min(mo.min, v);
        mo.max = std::max(mo.max, v);
    }

    std::vector<double> corrections(k, 0.0);
    std::vector<double> squares(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
        out[c].mean = out[c].min == out[c].max ? out[c].min : sums[c] / static_cast<double>(out[c].count);
    }
    for (std::size_t i = 0; i < column.size(); ++i) {
        const std::size_t c = labels[i];
        const double delta = column[i] - out[c].mean;
        corrections[c] += delta;
        squares[c] += delta * delta;
    }
    for (std::size_t c = 0; c < k; ++c) {
        auto& mo = out[c];
        if (mo.min == mo.max) {
            continue;
        }
        const double n = static_cast<double>(mo.count);
        mo.mean += corrections[c] / n;
        mo.m2 = std::max(0.0, squares[c] - corrections[c] * corrections[c] / n);
    }
    return out;
}

ContrastScore score_groups(const Moments& group, const Moments& reference, std::size_t feature_index, std::string feature_name) {
    ContrastScore score;
    score.feature_index = feature_index;
    score.feature_name = std::move(feature_name);

    const auto a = group.summary();
    const auto b = reference.summary();
    if (a.variance == 0 && b.variance == 0 && a.mean != b.mean) {
        score.t = a.mean > b.mean ? kSentinelT : -kSentinelT;
        score.df = static_cast<double>(a.count + b.count - 2);
        score.p = kMinPValue;
        score.decimals = kDecimalCap;
        score.degenerate = true;
        return score;
    }

    const auto result = welch_test(a, b);
    score.t = result.t;
    score.df = result.df;
    score.p = result.p;
    score.decimals = decimal_places(result.p);
    return score;
}

namespace {

// Scores of every cluster against its complement for one feature.
// Complements are assembled from prefix and suffix merges so each is built from the same
// ascending-id sequence of clusters regardless of which cluster is being scored.
void score_feature(const Dataset& d, std::size_t f, std::vector<ContrastScore>& out) {
    const auto moments = cluster_moments(d, f);
    const std::size_t k = moments.size();
    const std::size_t m = d.m();

    std::vector<Moments> prefix(k + 1);
    std::vector<Moments> suffix(k + 1);
    for (std::size_t c = 0; c < k; ++c) {
        prefix[c + 1] = prefix[c].merged(moments[c]);
    }
    for (std::size_t c = k; c > 0; --c) {
        suffix[c - 1] = moments[c - 1].merged(suffix[c]);
    }
    for (std::size_t c = 0; c < k; ++c) {
        const Moments complement = prefix[c].merged(suffix[c + 1]);
        out[c * m + f] = score_groups(moments[c], complement, f, d.feature_name(f));
    }
}

}

std::vector<ContrastScore> contrast_one_vs_rest(const Dataset& d, std::size_t cluster_id) {
    if (cluster_id >= d.cluster_count()) {
        throw LookupError("unknown cluster id " + std::to_string(cluster_id));
    }
    const auto matrix = full_matrix(d);
    auto row = matrix.row(cluster_id);
    return {row.begin(), row.end()};
}

PairContrast contrast_pair(const Dataset& d, std::size_t first_cluster, std::size_t second_cluster) {
    if (first_cluster >= d.cluster_count() || second_cluster >= d.cluster_count()) {
        throw LookupError("unknown cluster id in pair");
    }
    if (first_cluster == second_cluster) {
        throw ArgumentError("cannot compare a cluster with itself");
    }

    PairContrast out;
    out.first_cluster = first_cluster;
    out.second_cluster = second_cluster;
    out.first.reserve(d.m());
    out.second.reserve(d.m());
    for (std::size_t f = 0; f < d.m(); ++f) {
        const auto moments = cluster_moments(d, f);
        out.first.push_back(score_groups(moments[first_cluster], moments[second_cluster], f, d.feature_name(f)));
        out.second.push_back(score_groups(moments[second_cluster], moments[first_cluster], f, d.feature_name(f)));
    }
    return out;
}

ContrastMatrix full_matrix(const Dataset& d, const ContrastOptions& options) {
    ContrastMatrix matrix;
    matrix.clusters = d.cluster_names();
    matrix.features = d.feature_names();
    matrix.scores.resize(d.cluster_count() * d.m());

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, d.m()));

    if (threads <= 1) {
        for (std::size_t f = 0; f < d.m(); ++f) {
            score_feature(d, f, matrix.scores);
        }
        return matrix;
    }

    // Features are independent; each worker owns a contiguous block and writes disjoint cells.
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t block = (d.m() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t begin = w * block;
        const std::size_t end = std::min(d.m(), begin + block);
        workers.emplace_back([&d, &matrix, begin, end]() {
            for (std::size_t f = begin; f < end; ++f) {
                score_feature(d, f, matrix.scores);
            }
        });
    }
    workers.clear();
    return matrix;
}

FeatureRanking rank_features(std::span<const ContrastScore> scores, RankMode mode, std::size_t k) {
    if (k < 1) {
        throw ArgumentError("k must be at least 1");
    }

    auto key = [mode](const ContrastScore& s) {
        constexpr double inf = std::numeric_limits<double>::infinity();
        if (mode == RankMode::absolute_t) {
            return s.degenerate ? inf : std::abs(s.t);
        }
        if (s.degenerate) {
            return s.t > 0 ? inf : -inf;
        }
        return s.t;
    };

    FeatureRanking ranking;
    ranking.mode = mode;
    ranking.ordered.assign(scores.begin(), scores.end());
    std::sort(ranking.ordered.begin(), ranking.ordered.end(), [&](const ContrastScore& l, const ContrastScore& r) {
        const double kl = key(l);
        const double kr = key(r);
        if (kl != kr) {
            return kl > kr;
        }
        return l.feature_index < r.feature_index;
    });
    ranking.top_k = std::min(k, ranking.ordered.size());
    return ranking;
}

ImportancePayload importance_payload(const ContrastMatrix& matrix, std::size_t cluster_id, RankMode mode) {
    if (cluster_id >= matrix.clusters.size()) {
        throw LookupError("unknown cluster id " + std::to_string(cluster_id));
    }
    const auto row = matrix.row(cluster_id);
    const auto ranking = rank_features(row, mode, kDisplayedFeatures);

    ImportancePayload payload;
    payload.cluster_id = cluster_id;
    payload.cluster = matrix.clusters[cluster_id];
    payload.mode = mode;
    payload.displayed.assign(ranking.ordered.begin(), ranking.ordered.begin() + static_cast<std::ptrdiff_t>(ranking.top_k));
    const std::size_t pre = std::min(kPreselectedFeatures, ranking.ordered.size());
    payload.preselected.assign(ranking.ordered.begin(), ranking.ordered.begin() + static_cast<std::ptrdiff_t>(pre));
    payload.context.assign(row.begin(), row.end());
    return payload;
}

ImportancePayload importance_payload(const Dataset& d, std::size_t cluster_id, RankMode mode) {
    return importance_payload(full_matrix(d), cluster_id, mode);
}

}
