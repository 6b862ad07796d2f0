#include "clusterlens/json_io.hpp"

#include <cmath>
#include <cstdio>

#include "clusterlens/errors.hpp"

namespace clusterlens {

using nlohmann::json;

namespace {

void dump_into(const json& value, std::string& out) {
    switch (value.type()) {
    case json::value_t::object: {
        out.push_back('{');
        bool first = true;
        for (const auto& [key, item] : value.items()) {
            if (!first) {
                out.push_back(',');
            }
            first = false;
            out += json(key).dump();
            out.push_back(':');
            dump_into(item, out);
        }
        out.push_back('}');
        break;
    }
    case json::value_t::array: {
        out.push_back('[');
        bool first = true;
        for (const auto& item : value) {
            if (!first) {
                out.push_back(',');
            }
            first = false;
            dump_into(item, out);
        }
        out.push_back(']');
        break;
    }
    case json::value_t::number_float: {
        const double v = value.get<double>();
        if (!std::isfinite(v)) {
            throw DomainError("cannot encode a non-finite number as JSON");
        }
        char buffer[32];
        std::snprintf(buffer, sizeof(buffer), "%.17g", v);
        out += buffer;
        break;
    }
    default:
        out += value.dump();
    }
}

json cell_json(const ContrastScore& s) {
    return {{"t", s.t}, {"p", s.p}, {"decimals", s.decimals}, {"degenerate", s.degenerate}};
}

json indices_json(const std::vector<ContrastScore>& scores) {
    json out = json::array();
    for (const auto& s : scores) {
        out.push_back(s.feature_index);
    }
    return out;
}

}

std::string canonical_dump(const json& value) {
    std::string out;
    dump_into(value, out);
    return out;
}

json to_json(const ContrastScore& s) {
    return {
        {"index", s.feature_index}, {"feature", s.feature_name}, {"t", s.t}, {"df", s.df},
        {"p", s.p}, {"decimals", s.decimals}, {"degenerate", s.degenerate},
    };
}

json to_json(const ContrastMatrix& matrix) {
    json cells = json::array();
    for (const auto& s : matrix.scores) {
        cells.push_back(cell_json(s));
    }
    return {{"clusters", matrix.clusters}, {"features", matrix.features}, {"cells", std::move(cells)}};
}

json to_json(const FeatureRanking& ranking) {
    json ordered = json::array();
    for (const auto& s : ranking.ordered) {
        ordered.push_back(to_json(s));
    }
    return {{"cluster", ranking.cluster}, {"mode", to_string(ranking.mode)}, {"top_k", ranking.top_k}, {"ordered", std::move(ordered)}};
}

json to_json(const ImportancePayload& payload) {
    json displayed = json::array();
    for (const auto& s : payload.displayed) {
        displayed.push_back(to_json(s));
    }
    json context = json::array();
    for (const auto& s : payload.context) {
        context.push_back({{"index", s.feature_index}, {"p", s.p}, {"decimals", s.decimals}});
    }
    return {
        {"cluster", payload.cluster},
        {"mode", to_string(payload.mode)},
        {"displayed", std::move(displayed)},
        {"preselected", indices_json(payload.preselected)},
        {"context", std::move(context)},
    };
}

json to_json(const PairContrast& pair, const Dataset& d, RankMode mode) {
    json first = json::array();
    json second = json::array();
    for (const auto& s : pair.first) {
        first.push_back(cell_json(s));
    }
    for (const auto& s : pair.second) {
        second.push_back(cell_json(s));
    }
    auto preselect = [mode](const std::vector<ContrastScore>& scores) {
        const auto ranking = rank_features(scores, mode, kPreselectedFeatures);
        json out = json::array();
        for (std::size_t i = 0; i < ranking.top_k; ++i) {
            out.push_back(ranking.ordered[i].feature_index);
        }
        return out;
    };
    return {
        {"clusters", json::array({d.cluster_name(pair.first_cluster), d.cluster_name(pair.second_cluster)})},
        {"mode", to_string(mode)},
        {"features", d.feature_names()},
        {"first", std::move(first)},
        {"second", std::move(second)},
        {"preselected", {{"first", preselect(pair.first)}, {"second", preselect(pair.second)}}},
    };
}

json to_json(const HistogramPair& pair, const Dataset& d) {
    return {
        {"feature", d.feature_name(pair.feature_index)},
        {"index", pair.feature_index},
        {"edges", pair.bin_edges},
        {"in", pair.in_cluster},
        {"out", pair.out_cluster},
    };
}

json to_json(const GridLayout& grid, const CellSums& sums, const std::vector<CellSegments>& segments) {
    json cells = json::array();
    for (const auto& cell : segments) {
        json segs = json::array();
        for (const auto& seg : cell.segments) {
            segs.push_back({{"f", seg.feature_index}, {"frac", seg.width_fraction}, {"opacity", seg.opacity}});
        }
        cells.push_back({{"c", cell.col}, {"r", cell.row}, {"segments", std::move(segs)}, {"empty", cell.empty_texture}});
    }
    return {
        {"cols", grid.cols},
        {"rows", grid.rows},
        {"cell_size", grid.cell_size},
        {"selected", sums.selected},
        {"cells", std::move(cells)},
    };
}

namespace {

json per_topic_json(const CoherenceReport& report) {
    json out = json::array();
    for (const auto& entry : report.per_topic) {
        out.push_back({{"cluster", entry.cluster}, {"coherence", entry.coherence}});
    }
    return out;
}

}

json to_json(const TopicSet& topics, const CoherenceReport& report) {
    json list = json::array();
    for (const auto& topic : topics.topics) {
        list.push_back({{"cluster", topic.cluster}, {"terms", topic.terms}});
    }
    return {
        {"topics", std::move(list)},
        {"coherence", {{"per_topic", per_topic_json(report)}, {"mean", report.mean_coherence}, {"m", report.terms_per_topic}}},
        {"clamped", topics.clamped},
    };
}

json to_json(const CoherenceSweep& sweep) {
    json points = json::array();
    for (const auto& point : sweep.points) {
        points.push_back({{"m", point.terms}, {"mean", point.report.mean_coherence}, {"per_topic", per_topic_json(point.report)}});
    }
    return {{"sweep", std::move(points)}, {"auc", sweep.auc}};
}

}
