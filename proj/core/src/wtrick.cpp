#include "pslab/wtrick.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "pslab/error.hpp"

namespace pslab::wtrick {
namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, unsigned e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Residue r of z^d maps to the class b in [1, W] with b == -r.
u64 class_of(u64 r, u64 W) { return r == 0 ? W : W - r; }

// Index n with W n - b = v, when v == -b mod W.
std::optional<u64> index_of(u128 v, u64 b, u64 W) {
  const u128 t = v + b;
  if (t % W != 0) return std::nullopt;
  const u128 n = t / W;
  if (n > std::numeric_limits<u64>::max()) fail(ErrorCode::overflow, "lift index exceeds 64 bits");
  return static_cast<u64>(n);
}

double log_weight(u64 p, int d, const PSExponent& c) {
  const long double lp = std::log(static_cast<long double>(p));
  return static_cast<double>(std::exp((d - static_cast<long double>(c.q()) / c.p()) * lp) * lp);
}

double power_weight(u64 m, long double exponent) {
  return static_cast<double>(std::exp(exponent * std::log(static_cast<long double>(m))));
}

}  // namespace

WParams w_params(u64 x, int d, std::optional<u64> toy_W) {
  require(d >= 2, ErrorCode::invalid_degree, "W-trick needs d >= 2");
  WParams p;
  p.x = x;
  p.d = d;
  if (toy_W) {
    require(*toy_W >= 2, ErrorCode::invalid_argument, "toy W must be >= 2");
    require(x >= 1, ErrorCode::invalid_argument, "x must be >= 1");
    p.toy = true;
    p.W = *toy_W;
    p.w = std::numeric_limits<double>::quiet_NaN();
  } else {
    require(x >= 16, ErrorCode::undefined_w, "w = (1/2) log log x needs x >= 16");
    p.w = 0.5 * std::log(std::log(static_cast<double>(x)));
    u128 W = 4 * static_cast<u128>(d) * d * d;
    for (u64 q = 2; static_cast<double>(q) <= p.w; ++q) {
      bool prime = true;
      for (u64 r = 2; r * r <= q; ++r)
        if (q % r == 0) prime = false;
      if (prime) W *= q;
    }
    if (W > std::numeric_limits<u64>::max()) fail(ErrorCode::overflow, "W exceeds 64 bits");
    p.W = static_cast<u64>(W);
  }
  p.heuristic_W = x > 1 ? std::sqrt(std::log(static_cast<double>(x))) : 0;
  BigInt xd;
  mpz_ui_pow_ui(xd.get_mpz_t(), x, static_cast<unsigned long>(d));
  BigInt N = xd / BigInt(static_cast<unsigned long>(p.W)) + 1;
  p.N = to_u64(N);
  return p;
}

std::vector<u64> dth_power_units(u64 W, int d) {
  require(W >= 2, ErrorCode::invalid_argument, "W must be >= 2");
  require(d >= 1, ErrorCode::invalid_degree, "d must be >= 1");
  std::vector<char> seen(W, 0);
  for (u64 z = 1; z < W; ++z)
    if (std::gcd(z, W) == 1) seen[powmod(z, static_cast<unsigned>(d), W)] = 1;
  std::vector<u64> out;
  for (u64 r = 0; r < W; ++r)
    if (seen[r]) out.push_back(r);
  return out;
}

u64 sigma(u64 b, u64 W, int d) {
  require(W >= 1 && b >= 1 && b <= W, ErrorCode::invalid_argument, "sigma needs 1 <= b <= W");
  const u64 target = (W - b % W) % W;
  u64 count = 0;
  for (u64 z = 1; z <= W; ++z)
    if (powmod(z, static_cast<unsigned>(d), W) == target) ++count;
  return count;
}

std::vector<ResidueClass> residue_classes(u64 W, int d) {
  require(W >= 2, ErrorCode::invalid_argument, "W must be >= 2");
  std::vector<ResidueClass> out(W);
  for (u64 b = 1; b <= W; ++b) out[b - 1].b = b;
  for (u64 z = 1; z <= W; ++z) {
    const u64 r = powmod(z, static_cast<unsigned>(d), W);
    ResidueClass& rc = out[class_of(r, W) - 1];
    ++rc.sigma;
    if (std::gcd(z, W) == 1) rc.admissible = true;
  }
  return out;
}

std::vector<ResidueClass> admissible_classes(u64 W, int d) {
  std::vector<ResidueClass> out;
  for (const auto& rc : residue_classes(W, d))
    if (rc.admissible) out.push_back(rc);
  return out;
}

ResidueClass residue_class(u64 b, u64 W, int d) {
  ResidueClass rc;
  rc.b = b;
  rc.sigma = sigma(b, W, d);
  const u64 target = (W - b % W) % W;
  for (u64 z = 1; z < W && !rc.admissible; ++z)
    if (std::gcd(z, W) == 1 && powmod(z, static_cast<unsigned>(d), W) == target) rc.admissible = true;
  return rc;
}

u64 euler_phi(u64 n) {
  u64 result = n;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

std::optional<u64> lift_index(u64 p, u64 b, const WParams& params) {
  return index_of(checked_pow(p, static_cast<unsigned>(params.d)), b, params.W);
}

Normalization parse_normalization(const std::string& text) {
  if (text == "printed") return Normalization::printed;
  if (text == "unit-mean") return Normalization::unit_mean;
  fail(ErrorCode::parse_error, "normalization must be printed or unit-mean, got '" + text + "'");
}

std::string to_string(Normalization n) { return n == Normalization::printed ? "printed" : "unit-mean"; }

Majorant build_majorant(std::span<const u64> A, u64 b, const WParams& params, const PSExponent& c,
                        const Exec& exec, Normalization norm) {
  Majorant m{params, residue_class(b, params.W, params.d), c, 0, SparseWeights(params.N)};
  require(m.residue.sigma > 0 && m.residue.admissible, ErrorCode::inadmissible_b,
          "-" + std::to_string(b) + " is not a unit " + std::to_string(params.d) + "-th power mod " +
              std::to_string(params.W));
  m.normalization = c.as_double() * static_cast<double>(euler_phi(params.W)) /
                    (static_cast<double>(m.residue.sigma) * static_cast<double>(params.W));
  if (norm == Normalization::unit_mean) m.normalization *= params.d;
  std::vector<std::vector<std::pair<u64, double>>> parts(chunk_count(A.size(), exec));
  parallel_chunks(A.size(), exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      auto n = lift_index(A[i], b, params);
      if (n) parts[w].emplace_back(*n, m.normalization * log_weight(A[i], params.d, c));
    }
  });
  std::vector<std::pair<u64, double>> pairs;
  for (auto& part : parts) pairs.insert(pairs.end(), part.begin(), part.end());
  m.weights = SparseWeights::from_pairs(params.N, std::move(pairs));
  return m;
}

BChoice choose_b(std::span<const u64> A, const WParams& params, const PSExponent& c) {
  const auto classes = admissible_classes(params.W, params.d);
  require(!classes.empty(), ErrorCode::empty_residue_set, "no admissible residue class");
  const double phi = static_cast<double>(euler_phi(params.W));
  std::vector<double> raw(params.W + 1, 0.0);
  for (u64 p : A) {
    const u64 r = static_cast<u64>(checked_pow(p, static_cast<unsigned>(params.d)) % params.W);
    raw[class_of(r, params.W)] += log_weight(p, params.d, c);
  }
  BChoice out;
  double total = 0;
  bool first = true;
  for (const auto& rc : classes) {
    const double mass = raw[rc.b] * c.as_double() * phi / (static_cast<double>(rc.sigma) * params.W);
    out.masses.emplace_back(rc.b, mass);
    total += mass;
    if (first || mass > out.mass) {
      out.b = rc.b;
      out.mass = mass;
      first = false;
    }
  }
  out.average_mass = total / static_cast<double>(classes.size());
  return out;
}

LiftedSet lift(std::span<const u64> A, u64 b, const WParams& params) {
  LiftedSet out{b, {}};
  for (u64 p : A)
    if (auto n = lift_index(p, b, params)) out.members.push_back(*n);
  std::sort(out.members.begin(), out.members.end());
  return out;
}

std::vector<u64> unlift(const LiftedSet& lifted, const WParams& params) {
  std::vector<u64> out;
  out.reserve(lifted.members.size());
  for (u64 n : lifted.members) {
    const BigInt v = BigInt(static_cast<unsigned long>(params.W)) * static_cast<unsigned long>(n) -
                     static_cast<unsigned long>(lifted.b);
    FloorRoot r = floor_root_power_exact(v, 1, static_cast<unsigned>(params.d));
    require(r.exact, ErrorCode::invalid_argument, "lifted index " + std::to_string(n) + " is not on a d-th power");
    out.push_back(to_u64(r.root));
  }
  return out;
}

SparseWeights build_tau(const PSExponent& c, u64 b, const WParams& params) {
  const ResidueClass rc = residue_class(b, params.W, params.d);
  require(rc.admissible, ErrorCode::inadmissible_b, "tau needs admissible b");
  const long double e = params.d - static_cast<long double>(c.q()) / c.p();
  const double scale = c.as_double() / static_cast<double>(rc.sigma);
  std::vector<std::pair<u64, double>> pairs;
  for (u64 m : ps_integers(params.x, c))
    if (auto n = lift_index(m, b, params)) pairs.emplace_back(*n, scale * power_weight(m, e));
  return SparseWeights::from_pairs(params.N, std::move(pairs));
}

SparseWeights build_mu(u64 b, const WParams& params) {
  const ResidueClass rc = residue_class(b, params.W, params.d);
  require(rc.admissible, ErrorCode::inadmissible_b, "mu needs admissible b");
  const double scale = 1.0 / static_cast<double>(rc.sigma);
  std::vector<std::pair<u64, double>> pairs;
  for (u64 m = 1; m <= params.x; ++m)
    if (auto n = lift_index(m, b, params))
      pairs.emplace_back(*n, scale * static_cast<double>(checked_pow(m, static_cast<unsigned>(params.d - 1))));
  return SparseWeights::from_pairs(params.N, std::move(pairs));
}

DensityTransfer density_transfer(std::size_t set_size, const BChoice& choice, const WParams& params,
                                 const PSExponent& c) {
  DensityTransfer t;
  const double lx = std::log(static_cast<double>(params.x));
  const double cv = c.as_double();
  t.delta = std::pow(static_cast<double>(set_size), cv) * std::pow(lx, cv) / static_cast<double>(params.x);
  t.delta_d_N = std::pow(t.delta, params.d) * static_cast<double>(params.N);
  t.chosen_mass = choice.mass;
  return t;
}

}  // namespace pslab::wtrick
