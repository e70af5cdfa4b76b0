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

#pragma once

/**
 * @file
 * Tabular results and their CSV / JSON emission.
 *
 * Numbers are written with 12 significant digits in both formats, so a CSV
 * and a JSON file of the same table carry identical values.
 */

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cqed/scenario.hpp"

namespace cqed {

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Appends a row; ArgumentError when its width differs from `columns`.
    void add_row(std::vector<Cell> row);
};

/// printf("%.12g") of `x`.
std::string format_number(double x);

/// Fixed schema `scenario,trial,seed,outcome,fidelity,duration_us`, followed
/// by `sweep_index,<parameter>` when the set came from a sweep.
Table trial_table(const ResultSet &results);

std::string to_csv(const Table &table);
/// Array of objects keyed by column name.
std::string to_json(const Table &table);

/// Writes `table` to `path` (stdout when empty). IoError names the path.
void write_table(const Table &table, OutputFormat format, const std::string &path);

/// write_table(trial_table(results), ...).
void emit_results(const ResultSet &results, OutputFormat format, const std::string &path);

} // namespace cqed
