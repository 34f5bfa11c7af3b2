#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pslab/parallel.hpp"

namespace pslab::cli {

using nlohmann::ordered_json;

struct Globals {
  unsigned long long seed = 1;
  unsigned threads = 1;
  bool sequential = false;
  std::string out_dir;
  std::string format = "csv";

  Exec exec() const { return Exec{threads, sequential}; }
};

/// Rows of JSON scalars rendered as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<ordered_json>> rows;

  void add(std::vector<ordered_json> row) { rows.push_back(std::move(row)); }
  std::string csv() const;
  std::string json() const;
  std::string render(const std::string& format) const { return format == "json" ? json() : csv(); }
};

/// Writes to <out_dir>/<filename> when --out-dir is set, else to stdout.
void emit(const Globals& g, const std::string& text, const std::string& filename);
void write_file(const std::string& path, const std::string& text);
std::string join_path(const std::string& dir, const std::string& name);

/// "%.12g"
std::string fmt(double v);

}  // namespace pslab::cli
