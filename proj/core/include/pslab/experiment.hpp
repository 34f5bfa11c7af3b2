#pragma once

// Experiment configuration: line-oriented key=value text, repeatable keys for
// lists, '#' comments. serialize() is canonical, so parse(serialize(c)) == c
// and the config hash is the FNV-1a hash of the canonical text.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab {

struct ExperimentConfig {
  std::string name = "pipeline";
  std::vector<u64> x_list;
  std::vector<int> d_list{2};
  int s = 5;                          // variables of the K-trivial sum system
  std::vector<std::string> c_list;    // "p/q"
  std::optional<u64> toy_W;
  u64 grid_M = 0;                     // 0: next power of two >= 8N
  u64 seed = 1;
  std::string decay_mode = "auto";    // auto | dense | sampled
  std::string normalization = "printed";
  std::vector<i64> coeffs{1, -2, 1};  // greedy-avoider system
  std::string eps = "1/100";
  std::string k_file;                 // empty: diagonal K
  std::string u_offset = "1/2";       // u = u_threshold + u_offset
  bool greedy = true;
  bool restriction = true;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);
  std::string serialize() const;
  u64 hash() const;
  /// Throws on the documented precondition violations.
  void validate() const;
  std::size_t cell_count() const { return x_list.size() * d_list.size() * c_list.size(); }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

u64 fnv1a(const std::string& bytes);

/// SplitMix64 step; advances `state`.
u64 splitmix64(u64& state);
/// Independent generator for stream `stream` under a 64-bit master seed.
std::mt19937_64 make_rng(u64 seed, u64 stream);

}  // namespace pslab
