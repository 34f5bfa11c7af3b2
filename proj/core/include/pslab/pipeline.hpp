#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pslab/experiment.hpp"
#include "pslab/parallel.hpp"

namespace pslab {

std::string_view version();

/// One (d, c, x) cell: the three transference hypotheses plus context.
struct CellResult {
  int d = 0;
  std::string c;
  u64 x = 0;
  u64 W = 0, N = 0, b = 0, sigma = 0;
  std::size_t primes = 0, lifted = 0;
  double mass = 0, average_mass = 0, delta = 0, delta_d_N = 0;
  double decay = 0, decay_argmax = 0;
  std::string decay_mode;
  std::size_t decay_points = 0;
  double u = 0, moment = 0, moment_ratio = 0;
  bool moment_sampled = false;
  double kt_left = 0, kt_right = 0, kt_ratio = 0;
  std::string eta;
  std::size_t greedy_size = 0;
  std::string greedy_total = "0", greedy_nontrivial = "0";
  std::optional<double> bound;
  bool c_admissible = true;
  std::vector<std::string> warnings;
  double seconds = 0;  // not part of the CSV
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunManifest {
  u64 config_hash = 0;
  std::string tool_version;
  std::string config_text;
  std::string decay_mode;
  double seconds = 0;
  std::vector<CellResult> cells;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;

  bool all_pass() const;
};

/// Decay/moment mode shared by every cell so trends compare like with like:
/// `auto` becomes sampled when any cell's grid exceeds the dense cap.
std::string resolve_decay_mode(const ExperimentConfig& cfg);

CellResult run_cell(const ExperimentConfig& cfg, int d, const std::string& c, u64 x, const Exec& exec = {});

/// Cells in d, c, x order.
std::vector<CellResult> sweep(const ExperimentConfig& cfg, const Exec& exec = {});

/// sweep plus trend checks along x for each (d, c).
RunManifest run_pipeline(const ExperimentConfig& cfg, const Exec& exec = {});

std::string cells_csv(const std::vector<CellResult>& cells);
std::string manifest_json(const RunManifest& m);

}  // namespace pslab
