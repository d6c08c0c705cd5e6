#include "strainkp/output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <system_error>

#include "strainkp/error.hpp"

namespace strainkp::cli {

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::logic_error("table row has the wrong width");
  rows.push_back(std::move(row));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{:.9g}", v);
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const Table& t) {
  // JSON has no nan/inf; those become null.
  auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
  std::string out = "{\n  \"columns\": [";
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += fmt::format("{}\"{}\"", c ? ", " : "", t.columns[c]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n    [" : "\n    [";
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) out += ", ";
      out += num(t.rows[r][c]);
    }
    out += ']';
  }
  out += t.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::vector<std::filesystem::path> write_outputs(const std::vector<OutputFile>& files,
                                                 const std::filesystem::path& dir, OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", dir.string(), ec.message()));

  std::vector<std::filesystem::path> written;
  for (const auto& f : files) {
    const auto path = dir / fmt::format("{}.{}", f.stem, format_extension(format));
    const std::string body = format == OutputFormat::Csv ? to_csv(f.table) : to_json(f.table);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
    written.push_back(path);
  }
  return written;
}

}  // namespace strainkp::cli
