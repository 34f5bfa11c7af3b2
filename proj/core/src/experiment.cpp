#include "pslab/experiment.hpp"

#include <fstream>
#include <sstream>

#include "pslab/diophantine.hpp"
#include "pslab/error.hpp"
#include "pslab/fourier.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/wtrick.hpp"

namespace pslab {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

u64 parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const u64 out = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::logic_error&) {
    fail(ErrorCode::parse_error, key + ": not a non-negative integer: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int out = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return out;
  } catch (const std::logic_error&) {
    fail(ErrorCode::parse_error, key + ": not an integer: '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  fail(ErrorCode::parse_error, key + ": expected true or false, got '" + v + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  bool d_seen = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::parse_error, "line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "name") c.name = val;
    else if (key == "x") c.x_list.push_back(parse_u64(key, val));
    else if (key == "d") {
      if (!d_seen) c.d_list.clear();
      d_seen = true;
      c.d_list.push_back(parse_int(key, val));
    } else if (key == "s") c.s = parse_int(key, val);
    else if (key == "c") c.c_list.push_back(to_pq(parse_rational(val)));
    else if (key == "toy_w") c.toy_W = parse_u64(key, val);
    else if (key == "grid_m") c.grid_M = parse_u64(key, val);
    else if (key == "seed") c.seed = parse_u64(key, val);
    else if (key == "decay_mode") c.decay_mode = val;
    else if (key == "normalization") c.normalization = val;
    else if (key == "coeffs") c.coeffs = dioph::parse_coeffs(val);
    else if (key == "eps") c.eps = to_pq(parse_rational(val));
    else if (key == "k_file") c.k_file = val;
    else if (key == "u_offset") c.u_offset = to_pq(parse_rational(val));
    else if (key == "greedy") c.greedy = parse_bool(key, val);
    else if (key == "restriction") c.restriction = parse_bool(key, val);
    else fail(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  c.eps = to_pq(parse_rational(c.eps));
  c.u_offset = to_pq(parse_rational(c.u_offset));
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  require(static_cast<bool>(f), ErrorCode::io_error, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream o;
  o << "name=" << name << "\n";
  for (u64 x : x_list) o << "x=" << x << "\n";
  for (int d : d_list) o << "d=" << d << "\n";
  o << "s=" << s << "\n";
  for (const auto& c : c_list) o << "c=" << c << "\n";
  if (toy_W) o << "toy_w=" << *toy_W << "\n";
  o << "grid_m=" << grid_M << "\n";
  o << "seed=" << seed << "\n";
  o << "decay_mode=" << decay_mode << "\n";
  o << "normalization=" << normalization << "\n";
  o << "coeffs=";
  for (std::size_t i = 0; i < coeffs.size(); ++i) o << (i ? "," : "") << coeffs[i];
  o << "\n";
  o << "eps=" << eps << "\n";
  if (!k_file.empty()) o << "k_file=" << k_file << "\n";
  o << "u_offset=" << u_offset << "\n";
  o << "greedy=" << (greedy ? "true" : "false") << "\n";
  o << "restriction=" << (restriction ? "true" : "false") << "\n";
  return o.str();
}

u64 fnv1a(const std::string& bytes) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

u64 ExperimentConfig::hash() const { return fnv1a(serialize()); }

void ExperimentConfig::validate() const {
  require(!x_list.empty(), ErrorCode::invalid_argument, "config lists no x");
  require(!c_list.empty(), ErrorCode::invalid_argument, "config lists no c");
  require(!d_list.empty(), ErrorCode::invalid_argument, "config lists no d");
  require(cell_count() <= 10000, ErrorCode::invalid_argument,
          "sweep of " + std::to_string(cell_count()) + " cells exceeds the limit of 10000");
  for (int d : d_list) require(d >= 2, ErrorCode::invalid_degree, "d must be >= 2");
  require(s >= 3, ErrorCode::too_few_variables, "s must be >= 3");
  for (const auto& c : c_list) (void)PSExponent::parse(c);
  if (toy_W) {
    require(*toy_W >= 2, ErrorCode::invalid_argument, "toy_w must be >= 2");
    for (u64 x : x_list) require(x >= 1, ErrorCode::invalid_argument, "x must be >= 1");
  } else {
    for (u64 x : x_list) require(x >= 16, ErrorCode::undefined_w, "x = " + std::to_string(x) + " is below 16");
  }
  (void)expsum::parse_decay_mode(decay_mode);
  (void)wtrick::parse_normalization(normalization);
  for (int d : d_list) (void)dioph::validate_system(coeffs, d);
  require(parse_rational(eps) > 0, ErrorCode::invalid_argument, "eps must be positive");
  require(parse_rational(u_offset) > 0, ErrorCode::invalid_argument, "u_offset must be positive");
}

u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::mt19937_64 make_rng(u64 seed, u64 stream) {
  u64 st = seed;
  const u64 a = splitmix64(st);
  u64 st2 = a ^ (stream * 0xd1b54a32d192ed03ULL);
  return std::mt19937_64(splitmix64(st2));
}

}  // namespace pslab
