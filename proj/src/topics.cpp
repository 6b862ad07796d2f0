#include "clusterlens/topics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "clusterlens/errors.hpp"

namespace clusterlens {

TopicSet extract_topics(const Dataset& corpus, const ContrastMatrix& matrix, std::size_t terms_per_topic) {
    if (terms_per_topic < 2) {
        throw ArgumentError("topics need at least 2 terms for pairwise coherence");
    }
    if (!is_presence_dataset(corpus)) {
        throw ArgumentError("topic extraction needs a presence-type (bag-of-words) dataset");
    }

    TopicSet out;
    out.clamped = terms_per_topic > corpus.m();
    out.terms_per_topic = std::min(terms_per_topic, corpus.m());
    for (std::size_t c = 0; c < matrix.clusters.size(); ++c) {
        const auto ranking = rank_features(matrix.row(c), RankMode::signed_t, out.terms_per_topic);
        Topic topic;
        topic.cluster_id = c;
        topic.cluster = matrix.clusters[c];
        for (std::size_t i = 0; i < ranking.top_k; ++i) {
            topic.terms.push_back(ranking.ordered[i].feature_name);
        }
        out.topics.push_back(std::move(topic));
    }
    return out;
}

TopicSet extract_topics(const Dataset& corpus, std::size_t terms_per_topic) {
    return extract_topics(corpus, full_matrix(corpus), terms_per_topic);
}

CooccurrenceIndex::CooccurrenceIndex(const Dataset& corpus)
    : corpus_(&corpus), documents_(corpus.n()), words_((corpus.n() + 63) / 64), frequency_(corpus.m(), 0), presence_(corpus.m() * words_, 0) {
    for (std::size_t t = 0; t < corpus.m(); ++t) {
        const auto column = corpus.column(t);
        auto* bits = presence_.data() + t * words_;
        for (std::size_t doc = 0; doc < documents_; ++doc) {
            if (column[doc] > 0) {
                bits[doc / 64] |= std::uint64_t{1} << (doc % 64);
                ++frequency_[t];
            }
        }
    }
}

std::size_t CooccurrenceIndex::joint_frequency(std::size_t i, std::size_t j) const {
    const auto* a = presence_.data() + i * words_;
    const auto* b = presence_.data() + j * words_;
    std::size_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        count += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    }
    return count;
}

double CooccurrenceIndex::npmi(std::size_t i, std::size_t j) const {
    for (auto term : {i, j}) {
        if (term >= frequency_.size()) {
            throw LookupError("unknown term index " + std::to_string(term));
        }
        if (frequency_[term] == 0) {
            throw LookupError("term '" + corpus_->feature_name(term) + "' does not occur in the corpus");
        }
    }
    const std::size_t joint = joint_frequency(i, j);
    if (joint == 0) {
        return -1;
    }
    if (joint == documents_) {
        return 1;
    }
    const double n = static_cast<double>(documents_);
    const double pi = static_cast<double>(frequency_[i]) / n;
    const double pj = static_cast<double>(frequency_[j]) / n;
    const double pij = static_cast<double>(joint) / n + kNpmiSmoothing;
    const double value = std::log(pij / (pi * pj)) / -std::log(pij);
    return std::clamp(value, -1.0, 1.0);
}

double npmi(std::string_view term_i, std::string_view term_j, const Dataset& corpus) {
    const CooccurrenceIndex index(corpus);
    return index.npmi(corpus.feature_index(term_i), corpus.feature_index(term_j));
}

double topic_coherence(const Topic& topic, const CooccurrenceIndex& index) {
    if (topic.terms.size() < 2) {
        throw ArgumentError("coherence needs at least 2 terms");
    }
    std::vector<std::size_t> ids;
    ids.reserve(topic.terms.size());
    for (const auto& term : topic.terms) {
        ids.push_back(index.corpus().feature_index(term));
    }
    double total = 0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < ids.size(); ++a) {
        for (std::size_t b = a + 1; b < ids.size(); ++b) {
            total += index.npmi(ids[a], ids[b]);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

double topic_coherence(const Topic& topic, const Dataset& corpus) {
    return topic_coherence(topic, CooccurrenceIndex(corpus));
}

CoherenceReport coherence_report(const TopicSet& topics, const CooccurrenceIndex& index) {
    CoherenceReport report;
    report.terms_per_topic = topics.terms_per_topic;
    double total = 0;
    for (const auto& topic : topics.topics) {
        const double value = topic_coherence(topic, index);
        report.per_topic.push_back({topic.cluster_id, topic.cluster, value});
        total += value;
    }
    if (!report.per_topic.empty()) {
        report.mean_coherence = total / static_cast<double>(report.per_topic.size());
    }
    return report;
}

double trapezoid_area(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) {
        throw ArgumentError("trapezoid_area needs matching x and y");
    }
    double area = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        area += (x[i] - x[i - 1]) * (y[i] + y[i - 1]) / 2;
    }
    return area;
}

CoherenceSweep coherence_sweep(const Dataset& corpus, std::size_t first, std::size_t last) {
    return coherence_sweep(corpus, full_matrix(corpus), first, last);
}

CoherenceSweep coherence_sweep(const Dataset& corpus, const ContrastMatrix& matrix, std::size_t first, std::size_t last) {
    if (first < 2 || last < first) {
        throw ArgumentError("term sweep needs 2 <= first <= last");
    }
    const CooccurrenceIndex index(corpus);
    last = std::min(last, corpus.m());
    first = std::min(first, last);

    CoherenceSweep sweep;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t terms = first; terms <= last; ++terms) {
        const auto topics = extract_topics(corpus, matrix, terms);
        SweepPoint point;
        point.terms = terms;
        point.report = coherence_report(topics, index);
        xs.push_back(static_cast<double>(terms));
        ys.push_back(point.report.mean_coherence);
        sweep.points.push_back(std::move(point));
    }
    sweep.auc = trapezoid_area(xs, ys);
    return sweep;
}

}
