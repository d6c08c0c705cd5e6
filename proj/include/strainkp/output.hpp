#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "strainkp/config.hpp"

namespace strainkp::cli {

/// Rectangular numeric table with named columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

/// A file-to-be: `stem` gets the extension of the chosen format.
struct OutputFile {
  std::string stem;
  Table table;
};

/// Fixed formatting (9 significant digits, '.' decimal point) so identical
/// inputs give byte-identical files on every platform.
std::string format_number(double v);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

/// Writes every file or throws IoError. Callers compute all tables before
/// calling, so a config or numerical error never leaves partial output.
std::vector<std::filesystem::path> write_outputs(const std::vector<OutputFile>& files,
                                                 const std::filesystem::path& dir, OutputFormat format);

}  // namespace strainkp::cli
