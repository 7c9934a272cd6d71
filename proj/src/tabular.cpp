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

#include "dpiaudit/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dpiaudit/rng.hpp"

namespace dpiaudit {

namespace {

constexpr double kMinSd = 1e-12;

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;  // per data line
  std::vector<std::size_t> line_numbers;        // 1-based source line per row
};

// RFC-4180 style field splitting: quoted fields may contain commas and
// doubled quotes. A trailing '\r' (CRLF input) is stripped first.
std::vector<std::string> split_csv_line(std::string_view line,
                                        std::size_t line_number,
                                        std::string_view origin) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  std::size_t i = 0;
  bool field_started_quoted = false;
  while (i <= line.size()) {
    if (i == line.size()) {
      if (in_quotes) {
        throw DataError(std::string(origin) + ": line " +
                        std::to_string(line_number) +
                        ": unterminated quoted field");
      }
      fields.push_back(current);
      break;
    }
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && current.empty() && !field_started_quoted) {
      in_quotes = true;
      field_started_quoted = true;
    } else if (c == ',') {
      fields.push_back(current);
      current.clear();
      field_started_quoted = false;
    } else {
      current.push_back(c);
    }
    ++i;
  }
  return fields;
}

RawTable read_raw_table(std::string_view text, std::string_view origin) {
  RawTable table;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                      : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_number;
    if (line.empty() && pos > text.size()) break;  // trailing newline
    if (line_number == 1) {
      table.header = split_csv_line(line, line_number, origin);
      continue;
    }
    if (line.empty() || line == "\r") continue;  // skip blank lines
    auto fields = split_csv_line(line, line_number, origin);
    if (fields.size() != table.header.size()) {
      throw DataError(std::string(origin) + ": line " +
                      std::to_string(line_number) + ": expected " +
                      std::to_string(table.header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    table.cells.push_back(std::move(fields));
    table.line_numbers.push_back(line_number);
  }
  if (table.header.empty()) {
    throw DataError(std::string(origin) + ": empty file");
  }
  return table;
}

bool parse_finite_double(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + text.size()) return false;
  if (!std::isfinite(value)) return false;
  *out = value;
  return true;
}

void append_category(ColumnSchema* column,
                     std::unordered_set<std::string>* seen,
                     const std::string& label) {
  if (seen->insert(label).second) column->categories.push_back(label);
}

}  // namespace

const char* role_name(DatasetRole role) {
  switch (role) {
    case DatasetRole::Train: return "train";
    case DatasetRole::Holdout: return "holdout";
    case DatasetRole::Reference: return "reference";
    case DatasetRole::Synthetic: return "synthetic";
    case DatasetRole::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

std::optional<std::size_t> TabularDataset::column_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (schema[i].name == name) return i;
  }
  return std::nullopt;
}

bool same_schema(const std::vector<ColumnSchema>& a,
                 const std::vector<ColumnSchema>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].kind != b[i].kind) return false;
  }
  return true;
}

std::size_t Encoder::encoded_dim() const {
  std::size_t dim = 0;
  for (const auto& column : schema) {
    dim += column.kind == ColumnKind::Numeric ? 1 : column.categories.size();
  }
  return dim;
}

TabularDataset parse_csv_text(
    std::string_view text, std::string_view origin,
    const std::optional<std::vector<ColumnSchema>>& schema_hint) {
  const RawTable raw = read_raw_table(text, origin);
  const std::size_t n_cols = raw.header.size();

  if (schema_hint && schema_hint->size() != n_cols) {
    throw DataError(std::string(origin) + ": schema hint has " +
                    std::to_string(schema_hint->size()) + " columns, file has " +
                    std::to_string(n_cols));
  }

  // Reject missing fields up front so kind inference never sees them.
  for (std::size_t r = 0; r < raw.cells.size(); ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (raw.cells[r][c].empty()) {
        throw DataError(std::string(origin) + ": line " +
                        std::to_string(raw.line_numbers[r]) +
                        ": missing value in column '" + raw.header[c] + "'");
      }
    }
  }
  if (raw.cells.empty()) {
    throw DataError(std::string(origin) + ": no data rows");
  }

  TabularDataset data;
  data.role = DatasetRole::Unlabeled;
  data.schema.resize(n_cols);
  std::vector<std::unordered_set<std::string>> seen(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    auto& column = data.schema[c];
    column.name = raw.header[c];
    if (schema_hint) {
      column.kind = (*schema_hint)[c].kind;
    } else {
      bool all_numeric = true;
      double ignored = 0.0;
      for (const auto& row : raw.cells) {
        if (!parse_finite_double(row[c], &ignored)) {
          all_numeric = false;
          break;
        }
      }
      column.kind = all_numeric ? ColumnKind::Numeric : ColumnKind::Categorical;
    }
  }

  data.rows.reserve(raw.cells.size());
  for (std::size_t r = 0; r < raw.cells.size(); ++r) {
    Row row;
    row.reserve(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
      const std::string& cell = raw.cells[r][c];
      if (data.schema[c].kind == ColumnKind::Numeric) {
        double value = 0.0;
        if (!parse_finite_double(cell, &value)) {
          throw DataError(std::string(origin) + ": line " +
                          std::to_string(raw.line_numbers[r]) + ": value '" +
                          cell + "' in numeric column '" + raw.header[c] +
                          "' is not a finite real");
        }
        row.emplace_back(value);
      } else {
        append_category(&data.schema[c], &seen[c], cell);
        row.emplace_back(cell);
      }
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

TabularDataset load_csv(
    const std::string& path,
    const std::optional<std::vector<ColumnSchema>>& schema_hint) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_text(buffer.str(), path, schema_hint);
}

std::string value_to_string(const Value& value) {
  if (const double* num = std::get_if<double>(&value)) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), *num);
    return std::string(buf, ptr);
  }
  return std::get<std::string>(value);
}

std::string to_csv_text(const TabularDataset& data) {
  auto escape = [](const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    quoted.push_back('"');
    return quoted;
  };
  std::string out;
  for (std::size_t c = 0; c < data.schema.size(); ++c) {
    if (c > 0) out.push_back(',');
    out += escape(data.schema[c].name);
  }
  out.push_back('\n');
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      out += escape(value_to_string(row[c]));
    }
    out.push_back('\n');
  }
  return out;
}

ThreeWaySplit three_way_split(const TabularDataset& data, std::uint64_t seed) {
  const std::size_t n = data.n_rows();
  if (n < 3) {
    throw DataError("three_way_split needs at least 3 rows, got " +
                    std::to_string(n));
  }
  const std::vector<std::size_t> perm = random_permutation(n, seed);
  const std::size_t third = n / 3;

  auto block = [&](std::size_t begin, std::size_t end, DatasetRole role) {
    TabularDataset out;
    out.schema = data.schema;
    out.role = role;
    out.rows.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) out.rows.push_back(data.rows[perm[i]]);
    return out;
  };

  ThreeWaySplit split;
  split.train = block(0, third, DatasetRole::Train);
  split.holdout = block(third, 2 * third, DatasetRole::Holdout);
  split.reference = block(2 * third, n, DatasetRole::Reference);
  return split;
}

Encoder fit_encoder(const std::vector<const TabularDataset*>& pool) {
  if (pool.empty()) throw DataError("fit_encoder: empty pool");
  const auto& first_schema = pool.front()->schema;
  for (const TabularDataset* data : pool) {
    if (!same_schema(data->schema, first_schema)) {
      for (std::size_t c = 0; c < std::max(data->schema.size(), first_schema.size()); ++c) {
        if (c >= data->schema.size() || c >= first_schema.size() ||
            data->schema[c].name != first_schema[c].name ||
            data->schema[c].kind != first_schema[c].kind) {
          const std::string name = c < first_schema.size()
                                       ? first_schema[c].name
                                       : data->schema[c].name;
          throw DataError("fit_encoder: schema mismatch at column '" + name +
                          "'");
        }
      }
      throw DataError("fit_encoder: schema mismatch");
    }
  }

  Encoder encoder;
  encoder.schema = first_schema;
  encoder.stats.resize(first_schema.size());
  {
    std::string desc = "union of";
    for (const TabularDataset* data : pool) {
      desc += ' ';
      desc += role_name(data->role);
    }
    encoder.fitted_on = desc;
  }

  std::vector<std::unordered_set<std::string>> seen(first_schema.size());
  for (std::size_t c = 0; c < first_schema.size(); ++c) {
    if (first_schema[c].kind == ColumnKind::Numeric) {
      // Two-pass population statistics in pool concatenation order.
      double sum = 0.0;
      std::size_t count = 0;
      for (const TabularDataset* data : pool) {
        for (const auto& row : data->rows) {
          sum += std::get<double>(row[c]);
          ++count;
        }
      }
      const double mean = sum / static_cast<double>(count);
      double sq = 0.0;
      for (const TabularDataset* data : pool) {
        for (const auto& row : data->rows) {
          const double d = std::get<double>(row[c]) - mean;
          sq += d * d;
        }
      }
      encoder.stats[c].mean = mean;
      encoder.stats[c].sd =
          std::max(std::sqrt(sq / static_cast<double>(count)), kMinSd);
    } else {
      encoder.schema[c].categories.clear();
      for (const TabularDataset* data : pool) {
        for (const auto& row : data->rows) {
          append_category(&encoder.schema[c], &seen[c],
                          std::get<std::string>(row[c]));
        }
      }
    }
  }
  return encoder;
}

EncodedMatrix encode(const Encoder& encoder, const TabularDataset& data) {
  if (!same_schema(data.schema, encoder.schema)) {
    throw DataError("encode: dataset schema does not match encoder");
  }
  const std::size_t dim = encoder.encoded_dim();

  EncodedMatrix out;
  out.n_rows = data.n_rows();
  out.n_cols = dim;
  out.values.assign(out.n_rows * dim, 0.0);
  out.source.assign(out.n_rows, data.role);
  out.column_map.reserve(dim);

  // Per-column category lookup and encoded offsets.
  std::vector<std::unordered_map<std::string, std::size_t>> category_of(
      encoder.schema.size());
  std::vector<std::size_t> offset(encoder.schema.size());
  std::size_t next = 0;
  for (std::size_t c = 0; c < encoder.schema.size(); ++c) {
    offset[c] = next;
    if (encoder.schema[c].kind == ColumnKind::Numeric) {
      out.column_map.push_back(c);
      ++next;
    } else {
      for (std::size_t j = 0; j < encoder.schema[c].categories.size(); ++j) {
        category_of[c].emplace(encoder.schema[c].categories[j], j);
        out.column_map.push_back(c);
      }
      next += encoder.schema[c].categories.size();
    }
  }

  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    double* row_out = out.values.data() + r * dim;
    for (std::size_t c = 0; c < encoder.schema.size(); ++c) {
      if (encoder.schema[c].kind == ColumnKind::Numeric) {
        const double x = std::get<double>(data.rows[r][c]);
        row_out[offset[c]] = (x - encoder.stats[c].mean) / encoder.stats[c].sd;
      } else {
        const std::string& label = std::get<std::string>(data.rows[r][c]);
        const auto it = category_of[c].find(label);
        if (it == category_of[c].end()) {
          throw DataError("encode: row " + std::to_string(r) + ", column '" +
                          encoder.schema[c].name + "': unseen category '" +
                          label + "'");
        }
        row_out[offset[c] + it->second] = 1.0;
      }
    }
  }
  return out;
}

TabularDataset take_rows(const TabularDataset& data,
                         std::span<const std::size_t> row_ids) {
  TabularDataset out;
  out.schema = data.schema;
  out.role = data.role;
  out.rows.reserve(row_ids.size());
  for (const std::size_t id : row_ids) out.rows.push_back(data.rows.at(id));
  return out;
}

}  // namespace dpiaudit
