#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/parallel.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/subspace.hpp"
#include "pslab/weights.hpp"

namespace pslab::dioph {

struct EquationSystem {
  int d = 2;
  std::vector<i64> coeffs;
  int s() const { return static_cast<int>(coeffs.size()); }
  std::string str() const;
};

/// Throws degenerate on a zero coefficient and not-translation-invariant on a
/// nonzero coefficient sum.
EquationSystem validate_system(std::vector<i64> coeffs, int d);
std::vector<i64> parse_coeffs(const std::string& text);

/// Which vector K membership is tested on: (x_i^d) for sets of primes, the raw
/// coordinates for lifted sets.
enum class KMode { powers, raw };
KMode parse_k_mode(const std::string& text);

bool is_K_trivial(std::span<const u64> x, const EquationSystem& sys, const SubspaceUnion& K,
                  KMode mode = KMode::powers);

struct SolutionReport {
  BigInt total, trivial, nontrivial;
  std::vector<std::vector<u64>> witnesses;  // first nontrivial solutions in enumeration order
  bool truncated = false;
  double seconds = 0;
};

/// Ordered solutions in A^s; exact counts, at most `cap` witnesses.
SolutionReport enumerate_solutions(std::span<const u64> A, const EquationSystem& sys, const SubspaceUnion& K,
                                   std::size_t cap = 16, KMode mode = KMode::powers, const Exec& exec = {},
                                   std::size_t table_budget = 50'000'000);

/// Ordered solution count only.
BigInt count_solutions(std::span<const u64> A, const EquationSystem& sys, const Exec& exec = {},
                       std::size_t table_budget = 50'000'000);

/// Solutions with coordinate i ranging over domains[i].
BigInt count_solutions(const std::vector<std::vector<u64>>& domains, const EquationSystem& sys,
                       const Exec& exec = {}, std::size_t table_budget = 50'000'000);

struct KTrivialSum {
  double left = 0;   // sum over K-points of supp(nu)^s of prod nu(y_i)
  double right = 0;  // ||nu||_1^s N^{-1-eta}
  double ratio = 0;
  Rational eta;
  bool eta_admissible = false;
  std::size_t points = 0;
};

/// Needs every subspace of K to have dimension <= 2 (enumeration-refused).
/// K is read in raw lifted coordinates.
KTrivialSum k_trivial_weighted_sum(const SparseWeights& nu, const EquationSystem& sys, const SubspaceUnion& K,
                                   const Rational& c, const Rational& eps);

struct GreedyResult {
  std::vector<u64> A;
  SolutionReport verification;
  std::optional<double> bound;  // density bound at x, when its iterated log is defined
  std::size_t candidates = 0;
};

/// First-fit scan of the PS primes <= x.
GreedyResult greedy_avoider(u64 x, const PSExponent& c, const EquationSystem& sys, const SubspaceUnion& K,
                            const Exec& exec = {});
/// Same scan over an explicit increasing candidate list.
GreedyResult greedy_avoider(std::span<const u64> candidates, const EquationSystem& sys, const SubspaceUnion& K,
                            const Exec& exec = {});

}  // namespace pslab::dioph
