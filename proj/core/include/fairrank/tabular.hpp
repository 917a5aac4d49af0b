#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairrank/dataset.hpp"

namespace fairrank {

// Column roles and value mappings for a CSV file. Every header column must be
// classified exactly once (label, group, categorical, numeric or dropped).
// Empty negative/group0 value lists mean "everything not mapped to the other
// side"; nonempty lists cause unmapped rows to be rejected and counted.
struct TabularSchema {
    std::string label_column;
    std::vector<std::string> label_positive_values;
    std::vector<std::string> label_negative_values;
    std::string group_column;
    std::vector<std::string> group1_values;
    std::vector<std::string> group0_values;
    // Alternative numeric mapping for the sensitive column: group 1 iff the
    // value parses and lies in [min, max]. Takes precedence over the lists.
    bool group1_is_range = false;
    double group1_min = 0.0, group1_max = 0.0;
    std::vector<std::string> categorical_columns;
    std::vector<std::string> numeric_columns;
    std::vector<std::string> dropped_columns;
    bool drop_unclassified = false;  // header columns left unmentioned are dropped
    char separator = ',';
    bool standardize = true;

    static TabularSchema from_json(const std::string& text);
    static TabularSchema from_json_file(const std::string& path);
    std::string to_json() const;
};

// Everything needed to reproduce the feature space at test time: discovered
// categorical levels (first-appearance order) and standardization statistics,
// plus ingestion counters.
struct EncodingReport {
    std::size_t rows_read = 0;
    std::size_t rows_kept = 0;
    std::size_t rejected_label = 0;
    std::size_t rejected_group = 0;
    std::size_t parse_errors = 0;
    std::size_t unseen_levels = 0;  // only when re-applying a frozen encoding

    std::vector<std::string> numeric_names;
    std::vector<double> numeric_mean;
    std::vector<double> numeric_std;
    std::vector<std::pair<std::string, std::vector<std::string>>> categorical_levels;
    std::size_t d = 0;

    std::string to_json() const;
    static EncodingReport from_json(const std::string& text);
};

struct LoadedTable {
    Dataset data;
    EncodingReport report;
};

// Ingests the file, discovering levels and (optionally) standardization
// statistics from the data itself.
LoadedTable load_csv(const std::string& path, const TabularSchema& schema);

// Ingests with a frozen encoding so the feature space matches a previous
// load; levels unseen in the encoding map to an all-zero one-hot block.
LoadedTable load_csv_with(const std::string& path, const TabularSchema& schema,
                          const EncodingReport& encoding);

// Same two operations over already-parsed rows (header first). Lets callers
// split raw rows before any encoding statistics are computed.
LoadedTable load_rows(const std::vector<std::vector<std::string>>& rows,
                      const TabularSchema& schema);
LoadedTable load_rows_with(const std::vector<std::vector<std::string>>& rows,
                           const TabularSchema& schema, const EncodingReport& encoding);

// RFC-4180-style reader (quoted fields, embedded separators and newlines).
std::vector<std::vector<std::string>> read_csv(const std::string& path, char separator = ',');

void write_csv_row(std::string& out, const std::vector<std::string>& fields);

}  // namespace fairrank
