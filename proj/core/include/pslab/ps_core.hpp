#pragma once

// Piatetski-Shapiro sequences N^c = { floor(n^c) } for rational c = p/q in
// (1,2), their primes, and the prime-counting ratio.

#include <string>
#include <string_view>
#include <vector>

#include "pslab/parallel.hpp"
#include "pslab/rational.hpp"

namespace pslab {

/// The exponent c = p/q, reduced, with 1 < c < 2.
class PSExponent {
 public:
  PSExponent(u64 p, u64 q);
  static PSExponent parse(std::string_view text);

  u64 p() const { return p_; }
  u64 q() const { return q_; }
  Rational value() const { return Rational(static_cast<unsigned long>(p_), static_cast<unsigned long>(q_)); }
  double as_double() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  double inverse() const { return static_cast<double>(q_) / static_cast<double>(p_); }
  std::string str() const { return std::to_string(p_) + "/" + std::to_string(q_); }

  friend bool operator==(const PSExponent&, const PSExponent&) = default;

 private:
  u64 p_, q_;
};

struct FloorRoot {
  BigInt root;
  bool exact = false;  // root^b == n^a
};

/// The unique r with r^b <= n^a < (r+1)^b.
FloorRoot floor_root_power_exact(const BigInt& n, unsigned a, unsigned b);
BigInt floor_root_power(const BigInt& n, unsigned a, unsigned b);
/// Word-sized fast path; falls back to the exact route near integer boundaries.
u64 floor_root_power(u64 n, unsigned a, unsigned b);
/// ceil(n^{a/b}).
u64 ceil_root_power(u64 n, unsigned a, unsigned b);

/// floor(-m^{1/c}) - floor(-(m+1)^{1/c}); equals 1 iff m is in N^c.
int ps_indicator(u64 m, const PSExponent& c);
bool is_ps_member(u64 m, const PSExponent& c);

/// floor(n^c) for n >= 1.
u64 ps_term(u64 n, const PSExponent& c);
/// N^c intersected with [x], increasing.
std::vector<u64> ps_integers(u64 x, const PSExponent& c);
/// |N^c intersected with [x]| = ceil((x+1)^{1/c}) - 1.
u64 ps_integer_count(u64 x, const PSExponent& c);

/// All primes <= x, segmented sieve of Eratosthenes over odd numbers.
std::vector<u64> sieve_primes(u64 x, const Exec& exec = {});
inline constexpr std::size_t kSieveSegmentBytes = std::size_t{1} << 20;

struct PSPrimeSet {
  u64 x = 0;
  PSExponent c;
  std::vector<u64> members;
};

PSPrimeSet ps_primes(u64 x, const PSExponent& c, const Exec& exec = {});

struct CountReport {
  u64 x = 0;
  u64 count = 0;
  double ratio = 0;            // count * log x / x^{1/c}
  bool in_proven_range = true;  // c < 2817/2426
};

CountReport pnt_ratio(u64 x, const PSExponent& c, const Exec& exec = {});

}  // namespace pslab
