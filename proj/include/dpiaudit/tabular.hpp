//
// Copyright 2026 The dpi-audit Authors
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
//

#ifndef DPIAUDIT_TABULAR_HPP_
#define DPIAUDIT_TABULAR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dpiaudit/error.hpp"

namespace dpiaudit {

enum class ColumnKind { Numeric, Categorical };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::Categorical;
  // Categorical only. Order is fixed when the encoder is fitted and defines
  // the one-hot layout. Labels are unique within a column.
  std::vector<std::string> categories;
};

enum class DatasetRole { Train, Holdout, Reference, Synthetic, Unlabeled };
const char* role_name(DatasetRole role);

// A cell is a finite real for numeric columns, a label for categorical ones.
using Value = std::variant<double, std::string>;
using Row = std::vector<Value>;

// Schema-tagged mixed-type table. Immutable by convention after
// construction; all operations below return new datasets.
struct TabularDataset {
  std::vector<ColumnSchema> schema;
  std::vector<Row> rows;
  DatasetRole role = DatasetRole::Unlabeled;

  std::size_t n_rows() const { return rows.size(); }
  std::size_t n_cols() const { return schema.size(); }
  std::optional<std::size_t> column_index(std::string_view name) const;
};

// True when both schemas list the same column names and kinds, in order.
// Category lists may differ (they are unified at encoder-fit time).
bool same_schema(const std::vector<ColumnSchema>& a,
                 const std::vector<ColumnSchema>& b);

// z-score parameters for numeric columns plus the fitted category order for
// categorical ones. Encoding is a pure function: same encoder and row give
// the same vector.
struct Encoder {
  struct NumericStats {
    double mean = 0.0;
    double sd = 1.0;  // clamped to >= 1e-12 so encoding never divides by zero
  };

  std::vector<ColumnSchema> schema;  // categories as fitted
  std::vector<NumericStats> stats;   // parallel to schema; meaningful for numeric columns
  std::string fitted_on;             // description of the fitting pool

  std::size_t encoded_dim() const;
};

// Dense numeric view of a dataset in the shared metric space: z-scored
// numerics and 0/1 one-hot categoricals, row order preserved.
struct EncodedMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> values;            // row-major
  std::vector<DatasetRole> source;       // role tag per row
  std::vector<std::size_t> column_map;   // encoded dimension -> schema column

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * n_cols, n_cols};
  }
};

// Loads a UTF-8 comma-separated file with a header line. Column kinds are
// inferred (Numeric iff every value parses as a finite real) unless
// schema_hint pins them. Missing (empty) fields are rejected. Errors name
// the offending line and column.
TabularDataset load_csv(
    const std::string& path,
    const std::optional<std::vector<ColumnSchema>>& schema_hint = {});

// Same as load_csv but over an in-memory buffer; `origin` labels errors.
TabularDataset parse_csv_text(
    std::string_view text, std::string_view origin,
    const std::optional<std::vector<ColumnSchema>>& schema_hint = {});

// Serializes a dataset back to CSV (header + rows).
std::string to_csv_text(const TabularDataset& data);

struct ThreeWaySplit {
  TabularDataset train;
  TabularDataset holdout;
  TabularDataset reference;
};

// Seeded uniform permutation partitioned into contiguous blocks of sizes
// floor(n/3), floor(n/3), n - 2*floor(n/3); remainder rows land in the
// reference block. Deterministic for a fixed (data, seed).
ThreeWaySplit three_way_split(const TabularDataset& data, std::uint64_t seed);

// Fits z-score statistics (population sd) over the concatenated pool and
// unions categorical labels in first-appearance order. All pool members
// must share the same column names and kinds.
Encoder fit_encoder(const std::vector<const TabularDataset*>& pool);

// Maps every row into the encoder's metric space. Unseen categorical
// values are an error naming row, column and value.
EncodedMatrix encode(const Encoder& encoder, const TabularDataset& data);

// Copies the selected rows (by index) into a new dataset with the same
// schema and role.
TabularDataset take_rows(const TabularDataset& data,
                         std::span<const std::size_t> row_ids);

// Formats a cell for CSV output; numerics use the shortest representation
// that round-trips.
std::string value_to_string(const Value& value);

}  // namespace dpiaudit

#endif  // DPIAUDIT_TABULAR_HPP_
