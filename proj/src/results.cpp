// Copyright 2026 The cqed-teleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqed/results.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace cqed {

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

struct CsvCell {
    std::string operator()(const std::string &s) const { return csv_field(s); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
};

struct JsonCell {
    nlohmann::ordered_json operator()(const std::string &s) const { return s; }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(std::uint64_t v) const { return v; }
    nlohmann::ordered_json operator()(double v) const {
        if (!std::isfinite(v)) {
            return nullptr;
        }
        return std::strtod(format_number(v).c_str(), nullptr);
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
};

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw ArgumentError("Table::add_row: expected " + std::to_string(columns.size()) +
                            " cells, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Table trial_table(const ResultSet &results) {
    Table t;
    t.columns = {"scenario", "trial", "seed", "outcome", "fidelity", "duration_us"};
    const bool swept = !results.sweep_parameter.empty();
    if (swept) {
        t.columns.push_back("sweep_index");
        t.columns.push_back(results.sweep_parameter);
    }
    for (const TrialRow &r : results.rows) {
        std::vector<Cell> row{r.scenario,
                              static_cast<std::uint64_t>(r.trial),
                              r.seed,
                              std::string(to_string(r.outcome)),
                              r.fidelity,
                              r.duration_us};
        if (swept) {
            row.emplace_back(static_cast<std::uint64_t>(r.sweep_index.value_or(0)));
            row.emplace_back(r.sweep_value.value_or(0.0));
        }
        t.add_row(std::move(row));
    }
    return t;
}

std::string to_csv(const Table &table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c ? "," : "") + csv_field(table.columns[c]);
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                out += ",";
            }
            out += std::visit(CsvCell{}, row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const Table &table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            obj[table.columns[c]] = std::visit(JsonCell{}, row[c]);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void write_table(const Table &table, OutputFormat format, const std::string &path) {
    const std::string text = format == OutputFormat::csv ? to_csv(table) : to_json(table);
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw IoError("failed writing results to stdout");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open output file '" + path + "'");
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("failed writing output file '" + path + "'");
    }
}

void emit_results(const ResultSet &results, OutputFormat format, const std::string &path) {
    write_table(trial_table(results), format, path);
}

} // namespace cqed
