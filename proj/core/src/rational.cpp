#include "pslab/rational.hpp"

#include <algorithm>
#include <limits>

#include "pslab/error.hpp"

namespace pslab {

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  };
  auto slash = text.find('/');
  std::string num(trim(text.substr(0, slash)));
  std::string den = slash == std::string_view::npos ? "1" : std::string(trim(text.substr(slash + 1)));
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  require(valid_int(num) && valid_int(den), ErrorCode::parse_error,
          "not a rational: '" + std::string(text) + "'");
  BigInt n(num), d(den);
  require(d != 0, ErrorCode::parse_error, "zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_pq(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

BigInt to_bigint(u128 v) {
  BigInt hi = static_cast<unsigned long>(static_cast<u64>(v >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<u64>(v));
  return (hi << 64) + lo;
}

BigInt to_bigint(i128 v) {
  if (v >= 0) return to_bigint(static_cast<u128>(v));
  return -to_bigint(static_cast<u128>(-(v + 1)) + 1);
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
}

u64 to_u64(const BigInt& v) {
  require(sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64, ErrorCode::overflow,
          "value does not fit in 64 bits: " + v.get_str());
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

i64 to_i64(const BigInt& v) {
  require(mpz_sizeinbase(v.get_mpz_t(), 2) <= 63, ErrorCode::overflow,
          "value does not fit in 63 bits: " + v.get_str());
  BigInt a = abs(v);
  u64 mag = to_u64(a);
  return sgn(v) < 0 ? -static_cast<i64>(mag) : static_cast<i64>(mag);
}

i128 to_i128(const BigInt& v) {
  require(mpz_sizeinbase(v.get_mpz_t(), 2) <= 126, ErrorCode::overflow,
          "value does not fit in 126 bits: " + v.get_str());
  BigInt a = abs(v);
  BigInt hi = a >> 64;
  BigInt lo = a - (hi << 64);
  u128 mag = (static_cast<u128>(to_u64(hi)) << 64) | to_u64(lo);
  return sgn(v) < 0 ? -static_cast<i128>(mag) : static_cast<i128>(mag);
}

u128 checked_pow(u64 base, unsigned exp) {
  u128 out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    require(base == 0 || out <= std::numeric_limits<u128>::max() / base, ErrorCode::overflow,
            "power overflows 128 bits");
    out *= base;
  }
  return out;
}

}  // namespace pslab
