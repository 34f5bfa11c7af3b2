#include "pslab/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "pslab/diophantine.hpp"
#include "pslab/error.hpp"
#include "pslab/exponents.hpp"
#include "pslab/fourier.hpp"
#include "pslab/wtrick.hpp"

#ifndef PSLAB_VERSION
#define PSLAB_VERSION "0.0.0"
#endif

namespace pslab {
namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage ") + name + ": " + e.what());
  }
}

}  // namespace

std::string_view version() { return PSLAB_VERSION; }

bool RunManifest::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string resolve_decay_mode(const ExperimentConfig& cfg) {
  if (cfg.decay_mode != "auto") return cfg.decay_mode;
  for (int d : cfg.d_list)
    for (u64 x : cfg.x_list) {
      const auto p = wtrick::w_params(x, d, cfg.toy_W);
      const u64 M = cfg.grid_M ? cfg.grid_M : expsum::default_grid_size(p.N);
      if (M > expsum::kMaxDenseGrid) return "sampled";
    }
  return "dense";
}

CellResult run_cell(const ExperimentConfig& cfg, int d, const std::string& c_text, u64 x, const Exec& exec) {
  const auto t0 = std::chrono::steady_clock::now();
  CellResult r;
  r.d = d;
  r.c = c_text;
  r.x = x;
  const PSExponent c = PSExponent::parse(c_text);
  const Rational eps = parse_rational(cfg.eps);
  const u64 seed = [&] {
    u64 st = cfg.seed ^ fnv1a(std::to_string(d) + "|" + c.str() + "|" + std::to_string(x));
    return splitmix64(st);
  }();

  try {
    r.c_admissible = c.value() < 1 + exponents::c_of(d, cfg.s);
    if (!r.c_admissible) r.warnings.push_back("c outside (1, 1+c(d,s))");
  } catch (const Error& e) {
    r.c_admissible = false;
    r.warnings.push_back(std::string("admissibility: ") + std::string(code_name(e.code())));
  }

  const auto params = stage("w-params", [&] { return wtrick::w_params(x, d, cfg.toy_W); });
  r.W = params.W;
  r.N = params.N;
  const auto primes = stage("ps-primes", [&] { return ps_primes(x, c, exec); });
  r.primes = primes.members.size();
  const auto choice = stage("choose-b", [&] { return wtrick::choose_b(primes.members, params, c); });
  r.b = choice.b;
  r.mass = choice.mass;
  r.average_mass = choice.average_mass;
  const auto norm = wtrick::parse_normalization(cfg.normalization);
  const auto nu = stage("majorant", [&] {
    return wtrick::build_majorant(primes.members, choice.b, params, c, exec, norm);
  });
  r.sigma = nu.residue.sigma;
  r.lifted = nu.weights.size();
  const auto dt = wtrick::density_transfer(primes.members.size(), choice, params, c);
  r.delta = dt.delta;
  r.delta_d_N = dt.delta_d_N;

  const auto mode = expsum::parse_decay_mode(resolve_decay_mode(cfg));
  const u64 M = cfg.grid_M ? cfg.grid_M : expsum::default_grid_size(params.N);
  const auto decay = stage("fourier-decay", [&] {
    return expsum::fourier_decay(nu.weights, M, mode, seed, 4096, exec);
  });
  r.decay = decay.value;
  r.decay_argmax = decay.argmax;
  r.decay_mode = expsum::to_string(decay.mode);
  r.decay_points = decay.points;

  if (cfg.restriction) {
    try {
      r.u = to_double(exponents::u_threshold(d, c.value()).threshold + parse_rational(cfg.u_offset));
      const auto mom = stage("restriction", [&] {
        return expsum::restriction_moment(nu.weights, r.u, M, mode, seed + 1, exec);
      });
      r.moment = mom.moment;
      r.moment_ratio = mom.ratio;
      r.moment_sampled = mom.sampled;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::inadmissible_c) throw;
      r.u = std::nan("");
      r.moment = r.moment_ratio = std::nan("");
      r.warnings.push_back("restriction skipped: theta(d,c) >= 1");
    }
  }

  std::vector<i64> kt_coeffs(cfg.s, 1);
  kt_coeffs.back() = -(cfg.s - 1);
  const auto kt_sys = dioph::validate_system(kt_coeffs, d);
  const auto kt = stage("k-trivial", [&] {
    return dioph::k_trivial_weighted_sum(nu.weights, kt_sys, dioph::SubspaceUnion::diagonal(cfg.s), c.value(), eps);
  });
  r.kt_left = kt.left;
  r.kt_right = kt.right;
  r.kt_ratio = kt.ratio;
  r.eta = to_pq(kt.eta);
  if (!kt.eta_admissible) r.warnings.push_back("eta <= 0");

  if (cfg.greedy) {
    const auto sys = dioph::validate_system(cfg.coeffs, d);
    const auto K = cfg.k_file.empty() ? dioph::SubspaceUnion::diagonal(sys.s())
                                      : dioph::SubspaceUnion::load(cfg.k_file, sys.s());
    K.validate(sys.coeffs);
    const auto g = stage("greedy", [&] { return dioph::greedy_avoider(primes.members, sys, K, exec); });
    r.greedy_size = g.A.size();
    r.greedy_total = g.verification.total.get_str();
    r.greedy_nontrivial = g.verification.nontrivial.get_str();
  }
  if (x >= 3) {
    try {
      r.bound = exponents::density_bound(static_cast<double>(x), d, cfg.s, c.value());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::bound_undefined) throw;
    }
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CellResult> sweep(const ExperimentConfig& cfg, const Exec& exec) {
  cfg.validate();
  std::vector<CellResult> out;
  for (int d : cfg.d_list)
    for (const auto& c : cfg.c_list)
      for (u64 x : cfg.x_list) out.push_back(run_cell(cfg, d, c, x, exec));
  return out;
}

RunManifest run_pipeline(const ExperimentConfig& cfg, const Exec& exec) {
  const auto t0 = std::chrono::steady_clock::now();
  RunManifest m;
  m.config_hash = cfg.hash();
  m.tool_version = std::string(version());
  m.config_text = cfg.serialize();
  m.decay_mode = resolve_decay_mode(cfg);
  m.cells = sweep(cfg, exec);

  bool present = true;
  for (const auto& c : m.cells) {
    const bool ok = std::isfinite(c.decay) && std::isfinite(c.kt_left) && std::isfinite(c.kt_right) &&
                    (!cfg.restriction || !c.c_admissible || std::isfinite(c.moment));
    present = present && ok;
  }
  m.checks.push_back({"quantities-present", present, "decay, restriction moment and K-trivial sum are finite"});

  std::map<std::pair<int, std::string>, std::vector<const CellResult*>> groups;
  for (const auto& c : m.cells) groups[{c.d, c.c}].push_back(&c);
  for (auto& [key, cells] : groups) {
    std::sort(cells.begin(), cells.end(), [](auto* a, auto* b) { return a->x < b->x; });
    const std::string tag = "[d=" + std::to_string(key.first) + ",c=" + key.second + "]";
    bool decay_ok = true, kt_ok = true;
    std::ostringstream dd, kd;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      dd << (i ? " " : "") << cells[i]->x << ":" << num(cells[i]->decay);
      kd << (i ? " " : "") << cells[i]->x << ":" << num(cells[i]->kt_ratio);
      if (i == 0) continue;
      if (!(cells[i]->decay <= 1.3 * cells[i - 1]->decay)) decay_ok = false;
      if (!(cells[i]->kt_ratio < cells[i - 1]->kt_ratio)) kt_ok = false;
    }
    m.checks.push_back({"decay-trend" + tag, decay_ok, "decay(x_i) <= 1.3 decay(x_{i-1}); " + dd.str()});
    m.checks.push_back({"k-trivial-trend" + tag, kt_ok, "ratio strictly decreasing in x; " + kd.str()});
  }
  if (cfg.greedy) {
    bool ok = true;
    std::ostringstream det;
    for (const auto& c : m.cells) {
      ok = ok && c.greedy_nontrivial == "0";
      det << c.x << ":" << c.greedy_size << "/" << c.greedy_nontrivial << " ";
    }
    m.checks.push_back({"greedy-verified", ok, "size/nontrivial per x: " + det.str()});
  }
  m.seconds = seconds_since(t0);
  return m;
}

std::string cells_csv(const std::vector<CellResult>& cells) {
  std::ostringstream o;
  o << "d,c,x,W,N,b,sigma,primes,lifted,mass,average_mass,delta,delta_d_N,decay,decay_mode,decay_argmax,"
       "decay_points,u,moment,moment_ratio,moment_sampled,kt_left,kt_right,kt_ratio,eta,greedy_size,"
       "greedy_total,greedy_nontrivial,bound,c_admissible,warnings\n";
  for (const auto& r : cells) {
    std::string warn;
    for (std::size_t i = 0; i < r.warnings.size(); ++i) warn += (i ? "; " : "") + r.warnings[i];
    o << r.d << "," << r.c << "," << r.x << "," << r.W << "," << r.N << "," << r.b << "," << r.sigma << ","
      << r.primes << "," << r.lifted << "," << num(r.mass) << "," << num(r.average_mass) << "," << num(r.delta)
      << "," << num(r.delta_d_N) << "," << num(r.decay) << "," << r.decay_mode << "," << num(r.decay_argmax) << ","
      << r.decay_points << "," << num(r.u) << "," << num(r.moment) << "," << num(r.moment_ratio) << ","
      << (r.moment_sampled ? 1 : 0) << "," << num(r.kt_left) << "," << num(r.kt_right) << "," << num(r.kt_ratio)
      << "," << r.eta << "," << r.greedy_size << "," << r.greedy_total << "," << r.greedy_nontrivial << ","
      << (r.bound ? num(*r.bound) : "") << "," << (r.c_admissible ? 1 : 0) << ",\"" << warn << "\"\n";
  }
  return o.str();
}

std::string manifest_json(const RunManifest& m) {
  using nlohmann::ordered_json;
  ordered_json j;
  char hash[20];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(m.config_hash));
  j["config_hash"] = hash;
  j["tool_version"] = m.tool_version;
  j["decay_mode"] = m.decay_mode;
  j["seconds"] = m.seconds;
  j["config"] = m.config_text;
  ordered_json cells = ordered_json::array();
  for (const auto& c : m.cells) {
    ordered_json e;
    e["d"] = c.d;
    e["c"] = c.c;
    e["x"] = c.x;
    e["W"] = c.W;
    e["N"] = c.N;
    e["b"] = c.b;
    e["fourier_decay"] = c.decay;
    e["restriction_moment_ratio"] = std::isfinite(c.moment_ratio) ? ordered_json(c.moment_ratio) : ordered_json();
    e["k_trivial_ratio"] = c.kt_ratio;
    e["greedy_size"] = c.greedy_size;
    e["greedy_nontrivial"] = c.greedy_nontrivial;
    e["bound"] = c.bound ? ordered_json(*c.bound) : ordered_json();
    e["warnings"] = c.warnings;
    e["seconds"] = c.seconds;
    cells.push_back(e);
  }
  j["cells"] = cells;
  ordered_json checks = ordered_json::array();
  for (const auto& c : m.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["artifacts"] = m.artifacts;
  j["pass"] = m.all_pass();
  return j.dump(2) + "\n";
}

}  // namespace pslab
