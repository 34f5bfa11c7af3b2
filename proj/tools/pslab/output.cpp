#include "output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pslab/error.hpp"

namespace pslab::cli {
namespace {

std::string csv_cell(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_float()) return fmt(v.get<double>());
  return v.dump();
}

}  // namespace

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Table::csv() const {
  std::ostringstream o;
  for (std::size_t i = 0; i < columns.size(); ++i) o << (i ? "," : "") << columns[i];
  o << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << csv_cell(r[i]);
    o << "\n";
  }
  return o.str();
}

std::string Table::json() const {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json obj;
    for (std::size_t i = 0; i < columns.size() && i < r.size(); ++i) obj[columns[i]] = r[i];
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::io_error, "cannot write '" + path + "'");
  f << text;
  require(static_cast<bool>(f), ErrorCode::io_error, "write to '" + path + "' failed");
}

void emit(const Globals& g, const std::string& text, const std::string& filename) {
  if (g.out_dir.empty()) {
    std::cout << text;
    return;
  }
  const std::string path = join_path(g.out_dir, filename);
  write_file(path, text);
  std::cerr << "wrote " << path << "\n";
}

}  // namespace pslab::cli
