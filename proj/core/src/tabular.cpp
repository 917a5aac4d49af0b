#include "fairrank/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <unordered_map>

#include <json.hpp>

#include "fairrank/error.hpp"

namespace fairrank {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<std::string> get_string_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    return j.at(key).get<std::vector<std::string>>();
}

bool contains(const std::vector<std::string>& values, const std::string& v) {
    return std::find(values.begin(), values.end(), v) != values.end();
}

}  // namespace

TabularSchema TabularSchema::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    TabularSchema schema;
    const auto& label = j.at("label");
    schema.label_column = label.at("column").get<std::string>();
    schema.label_positive_values = get_string_list(label, "positive");
    schema.label_negative_values = get_string_list(label, "negative");
    const auto& group = j.at("group");
    schema.group_column = group.at("column").get<std::string>();
    schema.group1_values = get_string_list(group, "group1");
    schema.group0_values = get_string_list(group, "group0");
    if (group.contains("group1_range")) {
        const auto range = group["group1_range"].get<std::vector<double>>();
        if (range.size() != 2 || !(range[0] <= range[1]))
            throw SchemaError("group1_range must be [min, max]");
        schema.group1_is_range = true;
        schema.group1_min = range[0];
        schema.group1_max = range[1];
    }
    schema.categorical_columns = get_string_list(j, "categorical");
    schema.numeric_columns = get_string_list(j, "numeric");
    schema.dropped_columns = get_string_list(j, "drop");
    schema.drop_unclassified = j.value("drop_unclassified", false);
    const std::string separator = j.value("separator", std::string(","));
    if (separator.size() != 1) throw SchemaError("separator must be a single character");
    schema.separator = separator[0];
    schema.standardize = j.value("standardize", true);
    if (schema.label_positive_values.empty())
        throw SchemaError("schema must list at least one positive label value");
    if (schema.group1_values.empty() && !schema.group1_is_range)
        throw SchemaError("schema must define group-1 values or a numeric range");
    return schema;
}

TabularSchema TabularSchema::from_json_file(const std::string& path) {
    return from_json(read_file(path));
}

std::string TabularSchema::to_json() const {
    nlohmann::json j;
    j["label"] = {{"column", label_column},
                  {"positive", label_positive_values},
                  {"negative", label_negative_values}};
    j["group"] = {{"column", group_column},
                  {"group1", group1_values},
                  {"group0", group0_values}};
    if (group1_is_range)
        j["group"]["group1_range"] = std::vector<double>{group1_min, group1_max};
    j["categorical"] = categorical_columns;
    j["numeric"] = numeric_columns;
    j["drop"] = dropped_columns;
    j["drop_unclassified"] = drop_unclassified;
    j["separator"] = std::string(1, separator);
    j["standardize"] = standardize;
    return j.dump(2);
}

std::string EncodingReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["rows_read"] = rows_read;
    j["rows_kept"] = rows_kept;
    j["rejected_label"] = rejected_label;
    j["rejected_group"] = rejected_group;
    j["parse_errors"] = parse_errors;
    j["unseen_levels"] = unseen_levels;
    j["numeric_names"] = numeric_names;
    j["numeric_mean"] = numeric_mean;
    j["numeric_std"] = numeric_std;
    j["d"] = d;
    nlohmann::json levels = nlohmann::json::array();
    for (const auto& [column, vals] : categorical_levels)
        levels.push_back({{"column", column}, {"levels", vals}});
    j["categorical_levels"] = levels;
    return j.dump(2);
}

EncodingReport EncodingReport::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    EncodingReport r;
    r.rows_read = j.value("rows_read", std::size_t{0});
    r.rows_kept = j.value("rows_kept", std::size_t{0});
    r.rejected_label = j.value("rejected_label", std::size_t{0});
    r.rejected_group = j.value("rejected_group", std::size_t{0});
    r.parse_errors = j.value("parse_errors", std::size_t{0});
    r.unseen_levels = j.value("unseen_levels", std::size_t{0});
    r.numeric_names = j.value("numeric_names", std::vector<std::string>{});
    r.numeric_mean = j.value("numeric_mean", std::vector<double>{});
    r.numeric_std = j.value("numeric_std", std::vector<double>{});
    r.d = j.value("d", std::size_t{0});
    for (const auto& entry : j.value("categorical_levels", nlohmann::json::array()))
        r.categorical_levels.emplace_back(entry.at("column").get<std::string>(),
                                          entry.at("levels").get<std::vector<std::string>>());
    return r;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path, char separator) {
    const std::string text = read_file(path);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        if (ch == separator) {
            row.push_back(std::move(field));
            field.clear();
            row_started = true;
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !field.empty()) {
                    row.push_back(std::move(field));
                    field.clear();
                    rows.push_back(std::move(row));
                    row.clear();
                    row_started = false;
                }
                break;
            default:
                field.push_back(ch);
                row_started = true;
                break;
        }
    }
    if (row_started || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    if (in_quotes) throw SchemaError("unterminated quoted field in " + path);
    return rows;
}

void write_csv_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n\r") != std::string::npos) {
            out.push_back('"');
            for (char ch : f) {
                if (ch == '"') out.push_back('"');
                out.push_back(ch);
            }
            out.push_back('"');
        } else {
            out += f;
        }
    }
    out.push_back('\n');
}

namespace {

struct ColumnPlan {
    std::size_t label_idx = 0, group_idx = 0;
    std::vector<std::size_t> numeric_idx;      // schema order
    std::vector<std::size_t> categorical_idx;  // schema order
};

ColumnPlan plan_columns(const std::vector<std::string>& header, const TabularSchema& schema) {
    std::unordered_map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!position.emplace(header[i], i).second)
            throw SchemaError("duplicate header column '" + header[i] + "'");
    }
    auto locate = [&](const std::string& name) {
        auto it = position.find(name);
        if (it == position.end()) throw SchemaError("column '" + name + "' not found in file");
        return it->second;
    };

    ColumnPlan plan;
    plan.label_idx = locate(schema.label_column);
    plan.group_idx = locate(schema.group_column);

    std::unordered_map<std::string, int> classification_count;
    classification_count[schema.label_column]++;
    classification_count[schema.group_column]++;
    for (const auto& name : schema.numeric_columns) {
        plan.numeric_idx.push_back(locate(name));
        classification_count[name]++;
    }
    for (const auto& name : schema.categorical_columns) {
        plan.categorical_idx.push_back(locate(name));
        classification_count[name]++;
    }
    for (const auto& name : schema.dropped_columns) {
        locate(name);
        classification_count[name]++;
    }
    for (const auto& name : header) {
        const int count = classification_count[name];
        if (count == 0 && !schema.drop_unclassified)
            throw SchemaError("column '" + name + "' is not classified by the schema");
        if (count > 1) throw SchemaError("column '" + name + "' is classified more than once");
    }
    return plan;
}

bool parse_double(const std::string& text, double& out) {
    if (text.empty()) return false;
    char* end = nullptr;
    out = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && std::isfinite(out);
}

LoadedTable load_impl(const std::vector<std::vector<std::string>>& rows,
                      const TabularSchema& schema, const EncodingReport* frozen) {
    if (rows.empty()) throw SchemaError("table has no header row");
    const auto& header = rows.front();
    const ColumnPlan plan = plan_columns(header, schema);

    EncodingReport report;
    report.numeric_names = schema.numeric_columns;

    struct KeptRow {
        int label, group;
        std::vector<double> numeric;
        std::vector<std::string> categorical;
    };
    std::vector<KeptRow> kept;

    // Level dictionaries, in first-appearance order (or frozen order).
    std::vector<std::vector<std::string>> levels(schema.categorical_columns.size());
    if (frozen != nullptr) {
        if (frozen->categorical_levels.size() != schema.categorical_columns.size())
            throw SchemaError("frozen encoding does not match the schema's categorical columns");
        for (std::size_t c = 0; c < levels.size(); ++c) {
            if (frozen->categorical_levels[c].first != schema.categorical_columns[c])
                throw SchemaError("frozen encoding column order does not match the schema");
            levels[c] = frozen->categorical_levels[c].second;
        }
    }

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        ++report.rows_read;
        if (row.size() != header.size()) {
            ++report.parse_errors;
            continue;
        }

        const std::string& label_value = row[plan.label_idx];
        int label = 0;
        if (contains(schema.label_positive_values, label_value))
            label = 1;
        else if (schema.label_negative_values.empty() ||
                 contains(schema.label_negative_values, label_value))
            label = -1;
        else {
            ++report.rejected_label;
            continue;
        }

        const std::string& group_value = row[plan.group_idx];
        int group;
        if (schema.group1_is_range) {
            double value;
            if (!parse_double(group_value, value)) {
                ++report.rejected_group;
                continue;
            }
            group = value >= schema.group1_min && value <= schema.group1_max ? 1 : 0;
        } else if (contains(schema.group1_values, group_value)) {
            group = 1;
        } else if (schema.group0_values.empty() || contains(schema.group0_values, group_value)) {
            group = 0;
        } else {
            ++report.rejected_group;
            continue;
        }

        KeptRow out;
        out.label = label;
        out.group = group;
        out.numeric.reserve(plan.numeric_idx.size());
        bool bad = false;
        for (std::size_t c = 0; c < plan.numeric_idx.size() && !bad; ++c) {
            double value;
            if (!parse_double(row[plan.numeric_idx[c]], value))
                bad = true;
            else
                out.numeric.push_back(value);
        }
        if (bad) {
            ++report.parse_errors;
            continue;
        }
        out.categorical.reserve(plan.categorical_idx.size());
        for (std::size_t c = 0; c < plan.categorical_idx.size(); ++c) {
            const std::string& value = row[plan.categorical_idx[c]];
            if (frozen == nullptr && !contains(levels[c], value)) levels[c].push_back(value);
            out.categorical.push_back(value);
        }
        kept.push_back(std::move(out));
    }
    report.rows_kept = kept.size();
    if (kept.empty()) throw SchemaError("no usable data rows");

    const std::size_t n_numeric = schema.numeric_columns.size();
    if (frozen != nullptr && schema.standardize) {
        report.numeric_mean = frozen->numeric_mean;
        report.numeric_std = frozen->numeric_std;
        if (report.numeric_mean.size() != n_numeric || report.numeric_std.size() != n_numeric)
            throw SchemaError("frozen encoding standardization statistics missing");
    } else if (schema.standardize) {
        report.numeric_mean.assign(n_numeric, 0.0);
        report.numeric_std.assign(n_numeric, 0.0);
        for (const auto& row : kept)
            for (std::size_t c = 0; c < n_numeric; ++c) report.numeric_mean[c] += row.numeric[c];
        for (std::size_t c = 0; c < n_numeric; ++c)
            report.numeric_mean[c] /= static_cast<double>(kept.size());
        for (const auto& row : kept)
            for (std::size_t c = 0; c < n_numeric; ++c) {
                const double diff = row.numeric[c] - report.numeric_mean[c];
                report.numeric_std[c] += diff * diff;
            }
        for (std::size_t c = 0; c < n_numeric; ++c)
            report.numeric_std[c] = std::sqrt(report.numeric_std[c] /
                                              static_cast<double>(kept.size()));
    }

    std::size_t d = n_numeric;
    for (const auto& lv : levels) d += lv.size();
    report.d = d;
    for (std::size_t c = 0; c < levels.size(); ++c)
        report.categorical_levels.emplace_back(schema.categorical_columns[c], levels[c]);

    std::vector<LabeledSample> samples;
    samples.reserve(kept.size());
    for (const auto& row : kept) {
        LabeledSample sample;
        sample.label = row.label;
        sample.group = row.group;
        sample.features.assign(d, 0.0);
        for (std::size_t c = 0; c < n_numeric; ++c) {
            double value = row.numeric[c];
            if (schema.standardize) {
                const double sd = report.numeric_std[c];
                value = sd > 1e-12 ? (value - report.numeric_mean[c]) / sd : 0.0;
            }
            sample.features[c] = value;
        }
        std::size_t offset = n_numeric;
        for (std::size_t c = 0; c < levels.size(); ++c) {
            const auto& lv = levels[c];
            const auto it = std::find(lv.begin(), lv.end(), row.categorical[c]);
            if (it != lv.end())
                sample.features[offset + static_cast<std::size_t>(it - lv.begin())] = 1.0;
            else
                ++report.unseen_levels;
            offset += lv.size();
        }
        samples.push_back(std::move(sample));
    }
    return {Dataset(std::move(samples), d), std::move(report)};
}

}  // namespace

LoadedTable load_csv(const std::string& path, const TabularSchema& schema) {
    return load_impl(read_csv(path, schema.separator), schema, nullptr);
}

LoadedTable load_csv_with(const std::string& path, const TabularSchema& schema,
                          const EncodingReport& encoding) {
    return load_impl(read_csv(path, schema.separator), schema, &encoding);
}

LoadedTable load_rows(const std::vector<std::vector<std::string>>& rows,
                      const TabularSchema& schema) {
    return load_impl(rows, schema, nullptr);
}

LoadedTable load_rows_with(const std::vector<std::vector<std::string>>& rows,
                           const TabularSchema& schema, const EncodingReport& encoding) {
    return load_impl(rows, schema, &encoding);
}

}  // namespace fairrank
