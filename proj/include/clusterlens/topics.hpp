#ifndef CLUSTERLENS_TOPICS_HPP
#define CLUSTERLENS_TOPICS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "contrast.hpp"
#include "dataset.hpp"

/**
 * @file topics.hpp
 * @brief Topics from contrastive term rankings and their NPMI coherence.
 *
 * A corpus is a presence-type Dataset: rows are documents, features are terms,
 * and a term is present in a document when its value is positive.
 */

namespace clusterlens {

inline constexpr double kNpmiSmoothing = 1e-12;

struct Topic {
    std::size_t cluster_id = 0;
    std::string cluster;
    std::vector<std::string> terms;
};

struct TopicSet {
    std::vector<Topic> topics;
    std::size_t terms_per_topic = 0;
    /// Set when the requested term count exceeded the vocabulary and was reduced.
    bool clamped = false;
};

/**
 * First `terms_per_topic` terms of each cluster's signed ranking.
 * Throws ArgumentError for fewer than 2 terms or a non-presence dataset;
 * larger requests than the vocabulary are clamped and flagged.
 */
TopicSet extract_topics(const Dataset& corpus, std::size_t terms_per_topic);

/// Same, reusing an already computed contrast matrix.
TopicSet extract_topics(const Dataset& corpus, const ContrastMatrix& matrix, std::size_t terms_per_topic);

/**
 * Per-term document presence, precomputed so that many pairwise scores can share it.
 */
class CooccurrenceIndex {
public:
    explicit CooccurrenceIndex(const Dataset& corpus);

    std::size_t documents() const { return documents_; }
    std::size_t document_frequency(std::size_t term) const { return frequency_[term]; }
    std::size_t joint_frequency(std::size_t i, std::size_t j) const;

    /// Throws LookupError for a term that never appears.
    double npmi(std::size_t i, std::size_t j) const;

    const Dataset& corpus() const { return *corpus_; }

private:
    const Dataset* corpus_;
    std::size_t documents_;
    std::size_t words_;
    std::vector<std::size_t> frequency_;
    std::vector<std::uint64_t> presence_;
};

/**
 * Normalized pointwise mutual information of two terms over document co-occurrence:
 * `log((P(i,j) + eps) / (P(i) P(j))) / -log(P(i,j) + eps)`, clamped to [-1, 1].
 * Terms that never co-occur score -1; terms present in every document score 1.
 */
double npmi(std::string_view term_i, std::string_view term_j, const Dataset& corpus);

/// Mean NPMI over all unordered term pairs. Throws ArgumentError for fewer than 2 terms.
double topic_coherence(const Topic& topic, const Dataset& corpus);
double topic_coherence(const Topic& topic, const CooccurrenceIndex& index);

struct TopicCoherence {
    std::size_t cluster_id = 0;
    std::string cluster;
    double coherence = 0;
};

struct CoherenceReport {
    std::vector<TopicCoherence> per_topic;
    double mean_coherence = 0;
    std::size_t terms_per_topic = 0;
};

CoherenceReport coherence_report(const TopicSet& topics, const CooccurrenceIndex& index);

struct SweepPoint {
    std::size_t terms = 0;
    CoherenceReport report;
};

struct CoherenceSweep {
    std::vector<SweepPoint> points;
    /// Trapezoidal area under mean coherence as a function of the term count.
    double auc = 0;
};

/**
 * Mean coherence for each term count in `[first, last]`, plus the area under that curve.
 * Throws ArgumentError unless `2 <= first <= last`.
 */
CoherenceSweep coherence_sweep(const Dataset& corpus, std::size_t first, std::size_t last);
CoherenceSweep coherence_sweep(const Dataset& corpus, const ContrastMatrix& matrix, std::size_t first, std::size_t last);

/// Trapezoidal area under y(x); x must be increasing.
double trapezoid_area(const std::vector<double>& x, const std::vector<double>& y);

}

#endif
