#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pslab {

using BigInt = mpz_class;
using Rational = mpq_class;

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Parses "p/q" or "p" into a canonical rational. Throws parse-error.
Rational parse_rational(std::string_view text);

/// Always "p/q", even for integers, so CSV columns parse uniformly.
std::string to_pq(const Rational& r);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

BigInt to_bigint(u128 v);
BigInt to_bigint(i128 v);
std::string to_string(u128 v);
std::string to_string(i128 v);

/// Fits-check conversions; throw overflow.
u64 to_u64(const BigInt& v);
i64 to_i64(const BigInt& v);
i128 to_i128(const BigInt& v);

/// Exact integer power in 128 bits; throws overflow.
u128 checked_pow(u64 base, unsigned exp);

}  // namespace pslab
