#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logwell/catastrophe.hpp"
#include "logwell/config.hpp"

namespace logwell::cli {

// 17 significant digits; round-trips any double, byte-identical across runs.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view s);

// Hash of the canonical potential parameters, stamped into output metadata.
std::string spec_hash(const PotentialSpec& spec);

// Writes content to path via a temp file in the same directory plus rename.
void atomic_write_file(const std::string& path, const std::string& content);

using Cell = std::variant<long long, double, std::string>;

// One tabular result; renders as CSV (one-line header, '#'-prefixed metadata
// comments) or as a JSON document with the same content.
class TableWriter {
 public:
  TableWriter(OutFormat format, std::string command);

  void meta(const std::string& key, const std::string& value);
  void columns(std::vector<std::string> names);
  void row(std::vector<Cell> cells);

  std::string render() const;

 private:
  OutFormat format_;
  std::string command_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Crossing reports as a JSON array (the scan output's second artifact).
std::string crossings_to_json(const std::vector<catastrophe::CrossingReport>& reports);

// Machine-readable error object for stderr.
std::string error_json(const error& e);

}  // namespace logwell::cli
