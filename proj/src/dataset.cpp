#include "clusterlens/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "clusterlens/errors.hpp"

namespace clusterlens {

namespace {

std::vector<std::string> parse_string_list(const nlohmann::json& config, const char* key) {
    std::vector<std::string> out;
    for (const auto& item : config.at(key)) {
        if (!item.is_string()) {
            throw SchemaError(std::string("schema entry '") + key + "' must list column names");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::string required_string(const nlohmann::json& config, const char* key) {
    if (!config.contains(key) || !config.at(key).is_string()) {
        throw SchemaError(std::string("schema is missing string field '") + key + "'");
    }
    return config.at(key).get<std::string>();
}

// RFC 4180-style record splitter: quoted fields may contain delimiters, newlines and doubled quotes.
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

std::vector<Record> split_records(std::string_view text, char delimiter) {
    std::vector<Record> records;
    Record current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    current.line = line;

    auto finish_field = [&]() {
        current.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto finish_record = [&]() {
        finish_field();
        bool blank = current.fields.size() == 1 && current.fields[0].empty();
        if (!blank) {
            records.push_back(std::move(current));
        }
        current = Record{};
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') {
                    ++line;
                }
                field.push_back(ch);
            }
            continue;
        }

        if (ch == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (ch == delimiter) {
            finish_field();
        } else if (ch == '\r') {
            // Swallowed; CRLF endings are handled by the following '\n'.
        } else if (ch == '\n') {
            finish_record();
            ++line;
            current.line = line;
        } else {
            field.push_back(ch);
            field_started = true;
        }
    }
    if (in_quotes) {
        throw ParseError("unterminated quoted field", current.line, current.fields.size() + 1);
    }
    if (!field.empty() || !current.fields.empty()) {
        finish_record();
    }
    return records;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view raw, std::size_t row, std::size_t column) {
    auto cell = trim(raw);
    if (cell.empty()) {
        throw ParseError("missing value", row, column);
    }
    if (cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec == std::errc::result_out_of_range) {
        throw ValidationError("value out of range at row " + std::to_string(row) + ", column " + std::to_string(column));
    }
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError("non-numeric cell '" + std::string(cell) + "'", row, column);
    }
    if (!std::isfinite(value)) {
        throw ValidationError("non-finite value at row " + std::to_string(row) + ", column " + std::to_string(column));
    }
    return value;
}

}

Schema Schema::from_json(const nlohmann::json& config) {
    if (!config.is_object()) {
        throw SchemaError("schema must be a JSON object");
    }
    Schema schema;
    schema.label_col = required_string(config, "label_col");
    schema.x_col = required_string(config, "x_col");
    schema.y_col = required_string(config, "y_col");

    if (!config.contains("feature_cols")) {
        schema.rest = true;
    } else {
        const auto& features = config.at("feature_cols");
        if (features.is_string()) {
            if (features.get<std::string>() != "rest") {
                throw SchemaError("feature_cols must be a list of column names or \"rest\"");
            }
            schema.rest = true;
        } else if (features.is_array()) {
            schema.feature_cols = parse_string_list(config, "feature_cols");
            if (schema.feature_cols.empty()) {
                throw SchemaError("feature_cols must name at least one column");
            }
        } else {
            throw SchemaError("feature_cols must be a list of column names or \"rest\"");
        }
    }
    return schema;
}

Schema load_schema(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open schema file " + path.string());
    }
    nlohmann::json config;
    try {
        in >> config;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("schema file is not valid JSON: " + std::string(e.what()));
    }
    return Schema::from_json(config);
}

Dataset::Dataset(std::vector<std::string> feature_names,
                 std::vector<double> column_major_values,
                 std::vector<Point2> coords,
                 const std::vector<std::string>& labels)
    : feature_names_(std::move(feature_names)),
      values_(std::move(column_major_values)),
      coords_(std::move(coords)) {
    const std::size_t rows = coords_.size();
    if (labels.size() != rows) {
        throw ValidationError("label count " + std::to_string(labels.size()) + " does not match point count " + std::to_string(rows));
    }
    if (feature_names_.empty()) {
        throw ValidationError("dataset needs at least one feature");
    }
    if (values_.size() != rows * feature_names_.size()) {
        throw ValidationError("value matrix size does not match n * m");
    }

    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names_) {
        if (!seen.insert(name).second) {
            throw ValidationError("duplicate feature name '" + name + "'");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw ValidationError("non-finite feature value");
        }
    }
    for (const auto& p : coords_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw ValidationError("non-finite coordinate");
        }
    }

    std::unordered_map<std::string, std::size_t> ids;
    labels_.reserve(rows);
    for (const auto& label : labels) {
        auto [it, inserted] = ids.try_emplace(label, cluster_names_.size());
        if (inserted) {
            cluster_names_.push_back(label);
            cluster_sizes_.push_back(0);
        }
        labels_.push_back(it->second);
        ++cluster_sizes_[it->second];
    }

    if (cluster_names_.size() < 2) {
        throw ValidationError("dataset needs at least two distinct clusters");
    }
    for (std::size_t c = 0; c < cluster_names_.size(); ++c) {
        if (cluster_sizes_[c] < 2) {
            throw ValidationError("cluster '" + cluster_names_[c] + "' has fewer than 2 members");
        }
    }
}

Dataset Dataset::from_rows(std::vector<std::string> feature_names,
                           const std::vector<std::vector<double>>& rows,
                           std::vector<Point2> coords,
                           const std::vector<std::string>& labels) {
    const std::size_t m = feature_names.size();
    const std::size_t n = rows.size();
    std::vector<double> values(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m) {
            throw ValidationError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) + " values, expected " + std::to_string(m));
        }
        for (std::size_t f = 0; f < m; ++f) {
            values[f * n + i] = rows[i][f];
        }
    }
    return Dataset(std::move(feature_names), std::move(values), std::move(coords), labels);
}

std::size_t Dataset::feature_index(std::string_view name) const {
    auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
    if (it == feature_names_.end()) {
        throw LookupError("unknown feature '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - feature_names_.begin());
}

std::size_t Dataset::cluster_id(std::string_view name) const {
    auto it = std::find(cluster_names_.begin(), cluster_names_.end(), name);
    if (it == cluster_names_.end()) {
        throw LookupError("unknown cluster '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - cluster_names_.begin());
}

ClusterView cluster_view(const Dataset& d, std::size_t cluster_id) {
    if (cluster_id >= d.cluster_count()) {
        throw LookupError("unknown cluster id " + std::to_string(cluster_id));
    }
    ClusterView view;
    view.cluster_id = cluster_id;
    auto labels = d.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        (labels[i] == cluster_id ? view.member_indices : view.complement_indices).push_back(i);
    }
    return view;
}

ClusterView cluster_view(const Dataset& d, std::string_view cluster_name) {
    return cluster_view(d, d.cluster_id(cluster_name));
}

Dataset parse_dataset(std::string_view text, char delimiter, const Schema& schema) {
    auto records = split_records(text, delimiter);
    if (records.empty()) {
        throw ParseError("input is empty", 1, 1);
    }

    const auto& header = records.front().fields;
    std::vector<std::string> names;
    names.reserve(header.size());
    for (const auto& h : header) {
        names.emplace_back(trim(h));
    }

    auto locate = [&](const std::string& col, const char* role) -> std::size_t {
        auto it = std::find(names.begin(), names.end(), col);
        if (it == names.end()) {
            throw SchemaError(std::string(role) + " column '" + col + "' not found in header");
        }
        return static_cast<std::size_t>(it - names.begin());
    };

    const std::size_t label_pos = locate(schema.label_col, "label");
    const std::size_t x_pos = locate(schema.x_col, "x");
    const std::size_t y_pos = locate(schema.y_col, "y");

    std::vector<std::size_t> feature_pos;
    if (schema.rest) {
        for (std::size_t j = 0; j < names.size(); ++j) {
            if (j != label_pos && j != x_pos && j != y_pos) {
                feature_pos.push_back(j);
            }
        }
    } else {
        for (const auto& col : schema.feature_cols) {
            std::size_t pos = locate(col, "feature");
            if (pos == label_pos || pos == x_pos || pos == y_pos) {
                throw SchemaError("column '" + col + "' cannot be both a feature and a label/coordinate");
            }
            feature_pos.push_back(pos);
        }
        std::sort(feature_pos.begin(), feature_pos.end());
        if (std::adjacent_find(feature_pos.begin(), feature_pos.end()) != feature_pos.end()) {
            throw SchemaError("feature column listed twice");
        }
    }
    if (feature_pos.empty()) {
        throw SchemaError("schema selects no feature columns");
    }

    const std::size_t n = records.size() - 1;
    const std::size_t m = feature_pos.size();
    std::vector<double> values(n * m);
    std::vector<Point2> coords(n);
    std::vector<std::string> labels(n);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& rec = records[i + 1];
        if (rec.fields.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(rec.fields.size()),
                             rec.line, std::min(rec.fields.size(), header.size()) + 1);
        }
        auto label = trim(rec.fields[label_pos]);
        if (label.empty()) {
            throw ParseError("missing cluster label", rec.line, label_pos + 1);
        }
        labels[i] = std::string(label);
        coords[i].x = parse_number(rec.fields[x_pos], rec.line, x_pos + 1);
        coords[i].y = parse_number(rec.fields[y_pos], rec.line, y_pos + 1);
        for (std::size_t f = 0; f < m; ++f) {
            values[f * n + i] = parse_number(rec.fields[feature_pos[f]], rec.line, feature_pos[f] + 1);
        }
    }

    std::vector<std::string> feature_names;
    feature_names.reserve(m);
    for (auto pos : feature_pos) {
        feature_names.push_back(names[pos]);
    }
    return Dataset(std::move(feature_names), std::move(values), std::move(coords), labels);
}

char delimiter_for(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return (ext == ".tsv" || ext == ".tab") ? '\t' : ',';
}

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open input file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dataset(buffer.str(), delimiter_for(path), schema);
}

}
