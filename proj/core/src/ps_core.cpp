#include "pslab/ps_core.hpp"

#include <cmath>
#include <numeric>

#include "pslab/error.hpp"

namespace pslab {
namespace {

BigInt pow_big(const BigInt& base, unsigned exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

struct RootU64 {
  u64 root = 0;
  bool exact = false;
};

// Floating estimate accepted only when the fractional part is far from the
// integer grid; otherwise the exact big-integer search decides.
RootU64 root_u64(u64 n, unsigned a, unsigned b) {
  if (n <= 1 || a == 0) return {a == 0 ? 1 : n, true};
  const long double v = std::exp(static_cast<long double>(a) / b * std::log(static_cast<long double>(n)));
  if (v < 1e17L) {
    const long double f = std::floor(v);
    const long double frac = v - f;
    const long double tol = 1e-15L * v + 1e-12L;
    if (frac > tol && frac < 1 - tol) return {static_cast<u64>(f), false};
  }
  FloorRoot r = floor_root_power_exact(BigInt(static_cast<unsigned long>(n)), a, b);
  return {to_u64(r.root), r.exact};
}

}  // namespace

PSExponent::PSExponent(u64 p, u64 q) {
  require(p > 0 && q > 0, ErrorCode::invalid_exponent, "c = p/q needs positive p, q");
  const u64 g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
  require(q_ < p_ && p_ < 2 * q_, ErrorCode::invalid_exponent,
          "c = " + std::to_string(p_) + "/" + std::to_string(q_) + " must lie strictly in (1,2)");
  require(p_ <= 4096, ErrorCode::invalid_exponent, "numerator of c above 4096 is not supported");
}

PSExponent PSExponent::parse(std::string_view text) {
  Rational r = parse_rational(text);
  require(sgn(r) > 0, ErrorCode::invalid_exponent, "c must be positive");
  return PSExponent(to_u64(r.get_num()), to_u64(r.get_den()));
}

FloorRoot floor_root_power_exact(const BigInt& n, unsigned a, unsigned b) {
  require(b >= 1, ErrorCode::invalid_argument, "root index must be >= 1");
  require(sgn(n) >= 0, ErrorCode::invalid_argument, "floor_root_power needs n >= 0");
  if (a == 0) return {BigInt(1), true};
  if (n <= 1) return {n, true};
  const BigInt target = pow_big(n, a);
  if (b == 1) return {target, true};

  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, target.get_mpz_t());
  const double log_root = (std::log(mant) + static_cast<double>(exp2) * std::log(2.0)) / b;
  BigInt est;
  mpz_set_d(est.get_mpz_t(), std::exp(std::min(log_root, 700.0)));
  if (log_root > 700.0) {
    // Beyond double range: seed from the bit length instead.
    est = BigInt(1) << static_cast<unsigned long>(log_root / std::log(2.0));
  }
  BigInt delta = est >> 40;
  if (delta < 2) delta = 2;

  BigInt lo = est - delta;
  if (lo < 0) lo = 0;
  while (pow_big(lo, b) > target) {
    lo -= delta;
    if (lo < 0) lo = 0;
    delta *= 2;
  }
  BigInt hi = est + delta;
  while (pow_big(hi, b) <= target) {
    hi += delta;
    delta *= 2;
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (pow_big(mid, b) <= target)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, pow_big(lo, b) == target};
}

BigInt floor_root_power(const BigInt& n, unsigned a, unsigned b) { return floor_root_power_exact(n, a, b).root; }

u64 floor_root_power(u64 n, unsigned a, unsigned b) { return root_u64(n, a, b).root; }

u64 ceil_root_power(u64 n, unsigned a, unsigned b) {
  RootU64 r = root_u64(n, a, b);
  return r.exact ? r.root : r.root + 1;
}

int ps_indicator(u64 m, const PSExponent& c) {
  const auto q = static_cast<unsigned>(c.q());
  const auto p = static_cast<unsigned>(c.p());
  // floor(-y) = -ceil(y)
  const u64 lo = ceil_root_power(m, q, p);
  const u64 hi = ceil_root_power(m + 1, q, p);
  return static_cast<int>(hi - lo);
}

bool is_ps_member(u64 m, const PSExponent& c) {
  require(m >= 1, ErrorCode::invalid_argument, "membership is defined for m >= 1");
  return ps_indicator(m, c) == 1;
}

u64 ps_term(u64 n, const PSExponent& c) {
  return floor_root_power(n, static_cast<unsigned>(c.p()), static_cast<unsigned>(c.q()));
}

std::vector<u64> ps_integers(u64 x, const PSExponent& c) {
  std::vector<u64> out;
  out.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(x), c.inverse())) + 2);
  for (u64 n = 1;; ++n) {
    const u64 m = ps_term(n, c);
    if (m > x) break;
    out.push_back(m);
  }
  return out;
}

u64 ps_integer_count(u64 x, const PSExponent& c) {
  return ceil_root_power(x + 1, static_cast<unsigned>(c.q()), static_cast<unsigned>(c.p())) - 1;
}

PSPrimeSet ps_primes(u64 x, const PSExponent& c, const Exec& exec) {
  PSPrimeSet set{x, c, {}};
  if (x < 2) return set;
  const std::vector<u64> primes = sieve_primes(x, exec);
  std::vector<std::vector<u64>> parts(chunk_count(primes.size(), exec));
  parallel_chunks(primes.size(), exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      if (is_ps_member(primes[i], c)) parts[w].push_back(primes[i]);
  });
  for (auto& part : parts) set.members.insert(set.members.end(), part.begin(), part.end());
  return set;
}

CountReport pnt_ratio(u64 x, const PSExponent& c, const Exec& exec) {
  require(x >= 3, ErrorCode::invalid_argument, "pnt_ratio needs x >= 3");
  CountReport r;
  r.x = x;
  r.count = ps_primes(x, c, exec).members.size();
  const double xd = static_cast<double>(x);
  r.ratio = static_cast<double>(r.count) * std::log(xd) / std::pow(xd, c.inverse());
  r.in_proven_range = c.value() < Rational(2817, 2426);
  return r;
}

}  // namespace pslab
