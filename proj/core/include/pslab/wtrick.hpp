#pragma once

// The W-trick: modulus W = 4d^3 * prod_{p <= w} p, residue classes b with
// -b a unit d-th power, the majorant nu_b, the lifted set B(b) and the
// auxiliary weights tau and mu.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/parallel.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/weights.hpp"

namespace pslab::wtrick {

struct WParams {
  u64 x = 0;
  int d = 0;
  double w = 0;            // (1/2) log log x, or NaN under a toy override
  u64 W = 0;
  u64 N = 0;               // floor(x^d / W) + 1
  bool toy = false;
  double heuristic_W = 0;  // sqrt(log x)
};

/// Follows x exactly unless `toy_W` fixes the modulus.
WParams w_params(u64 x, int d, std::optional<u64> toy_W = std::nullopt);

/// {z^d mod W : gcd(z, W) = 1}, sorted.
std::vector<u64> dth_power_units(u64 W, int d);

/// #{z in [W] : z^d == -b mod W}.
u64 sigma(u64 b, u64 W, int d);

struct ResidueClass {
  u64 b = 0;
  u64 sigma = 0;
  bool admissible = false;  // -b is a unit d-th power
};

/// Every b in [W], with sigma from one pass over z in [W].
std::vector<ResidueClass> residue_classes(u64 W, int d);
std::vector<ResidueClass> admissible_classes(u64 W, int d);
ResidueClass residue_class(u64 b, u64 W, int d);

u64 euler_phi(u64 n);

/// As printed the majorant averages 1/d on [N]; unit-mean multiplies by d.
enum class Normalization { printed, unit_mean };
Normalization parse_normalization(const std::string& text);
std::string to_string(Normalization n);

struct Majorant {
  WParams params;
  ResidueClass residue;
  PSExponent c;
  double normalization = 0;  // c phi(W) / (sigma(b) W), times d under unit-mean
  SparseWeights weights;
};

/// nu_b(n) = normalization * p^{d-1/c} log p where Wn - b = p^d, p in A.
Majorant build_majorant(std::span<const u64> A, u64 b, const WParams& params, const PSExponent& c,
                        const Exec& exec = {}, Normalization norm = Normalization::printed);

struct BChoice {
  u64 b = 0;
  double mass = 0;
  double average_mass = 0;
  std::vector<std::pair<u64, double>> masses;  // per admissible b, increasing b
};

/// Admissible b of largest total nu_b mass, smallest b on ties.
BChoice choose_b(std::span<const u64> A, const WParams& params, const PSExponent& c);

struct LiftedSet {
  u64 b = 0;
  std::vector<u64> members;  // B(b) = {n : Wn - b = p^d, p in A}, increasing
};

LiftedSet lift(std::span<const u64> A, u64 b, const WParams& params);
/// Inverse of lift: the primes p with p^d = Wn - b.
std::vector<u64> unlift(const LiftedSet& lifted, const WParams& params);

/// tau(n) = (c/sigma(b)) m^{d-1/c} on Wn - b = m^d, m in N^c_x.
SparseWeights build_tau(const PSExponent& c, u64 b, const WParams& params);
/// mu(n) = m^{d-1}/sigma(b) on Wn - b = m^d, m in [x].
SparseWeights build_mu(u64 b, const WParams& params);

struct DensityTransfer {
  double delta = 0;       // |A|^c log^c x / x
  double delta_d_N = 0;   // delta^d N
  double chosen_mass = 0;
};

DensityTransfer density_transfer(std::size_t set_size, const BChoice& choice, const WParams& params,
                                 const PSExponent& c);

/// (p^d + b) / W when p^d == -b mod W.
std::optional<u64> lift_index(u64 p, u64 b, const WParams& params);

}  // namespace pslab::wtrick
