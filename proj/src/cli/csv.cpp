#include "cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <system_error>

#include "cosa/error.hpp"

namespace cosa::cli {

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, field_started = false, any = false;
  char c;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) quoted = field_started = true;
        else field.push_back(c);
        break;
      case ',': end_field(); break;
      case '\r':
        if (in.peek() == '\n') in.get(c);
        end_row();
        break;
      case '\n': end_row(); break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) throw Error(ErrorCode::Parse, "unterminated quoted field");
  if (any && (!field.empty() || !row.empty())) end_row();
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  std::size_t start = 0, end = text.size();
  while (start < end && (text[start] == ' ' || text[start] == '\t')) ++start;
  while (end > start && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  if (start < end && text[start] == '+') ++start;
  double v = 0.0;
  const auto res = std::from_chars(text.data() + start, text.data() + end, v);
  if (res.ec != std::errc() || res.ptr != text.data() + end || start == end)
    throw Error(ErrorCode::Parse, "not a number: '" + text + "'");
  return v;
}

DataMatrix read_data_csv(std::istream& in, const CsvOptions& options) {
  const auto rows = parse_csv(in);
  if (rows.empty()) throw Error(ErrorCode::Parse, "empty CSV (header row required)");
  const auto& header = rows[0];
  std::size_t id_col = header.size();
  if (!options.id_column.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == options.id_column) id_col = c;
    if (id_col == header.size()) throw Error(ErrorCode::Parse, "id column '" + options.id_column + "' not in header");
  }
  for (const auto& name : options.categorical) {
    bool found = false;
    for (const auto& h : header) found = found || h == name;
    if (!found) throw Error(ErrorCode::Parse, "categorical column '" + name + "' not in header");
  }

  std::vector<std::string> col_ids, row_ids;
  std::vector<AttributeKind> kinds;
  std::vector<std::size_t> source;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == id_col) continue;
    col_ids.push_back(header[c]);
    kinds.push_back(options.categorical.count(header[c]) ? AttributeKind::Categorical : AttributeKind::Numeric);
    source.push_back(c);
  }
  const std::size_t n = rows.size() - 1, p = col_ids.size();
  std::vector<double> values;
  values.reserve(n * p);
  std::vector<std::map<std::string, double>> codes(p);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      throw Error(ErrorCode::Parse, "line " + std::to_string(r + 1) + ": expected " + std::to_string(header.size()) +
                                        " fields, got " + std::to_string(row.size()));
    row_ids.push_back(id_col < header.size() ? row[id_col] : std::to_string(r));
    for (std::size_t k = 0; k < p; ++k) {
      const std::string& cell = row[source[k]];
      if (kinds[k] == AttributeKind::Categorical) {
        auto [it, _] = codes[k].try_emplace(cell, static_cast<double>(codes[k].size()));
        values.push_back(it->second);
        continue;
      }
      try {
        values.push_back(parse_double(cell));
      } catch (const Error&) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(r + 1) + ", column " + std::to_string(source[k] + 1) +
                                          " (" + header[source[k]] + "): not a number: '" + cell + "'");
      }
    }
  }
  return DataMatrix(n, p, std::move(values), std::move(kinds), std::move(row_ids), std::move(col_ids));
}

DataMatrix read_data_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return read_data_csv(in, options);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_data_csv(std::ostream& out, const DataMatrix& x) {
  for (std::size_t k = 0; k < x.cols(); ++k) out << (k ? "," : "") << csv_escape(x.col_ids()[k]);
  out << '\n';
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < x.cols(); ++k) out << (k ? "," : "") << format_double(x(i, k));
    out << '\n';
  }
}

}  // namespace cosa::cli
