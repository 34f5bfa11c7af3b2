#include "pslab/torus.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "pslab/error.hpp"

namespace pslab {

TorusPoint TorusPoint::from_double(double a) {
  require(std::isfinite(a), ErrorCode::invalid_argument, "torus point must be finite");
  double f = a - std::floor(a);
  if (f >= 1.0) f = 0.0;
  return {f, std::nullopt};
}

TorusPoint TorusPoint::from_rational(i64 a, u64 q) {
  require(q >= 1, ErrorCode::invalid_argument, "denominator must be >= 1");
  const i128 r = (static_cast<i128>(a) % static_cast<i128>(q) + q) % q;
  u64 num = static_cast<u64>(r);
  const u64 g = std::gcd(num, q);
  const u64 qq = q / (g == 0 ? q : g);
  num = g == 0 ? 0 : num / g;
  return {static_cast<double>(static_cast<long double>(num) / qq), std::make_pair(num, qq)};
}

TorusPoint TorusPoint::parse(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    Rational r = parse_rational(text);
    return from_rational(to_i64(r.get_num()), to_u64(r.get_den()));
  }
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return from_double(v);
  } catch (const std::logic_error&) {
    fail(ErrorCode::parse_error, "not a torus point: '" + text + "'");
  }
}

std::string TorusPoint::str() const {
  if (exact) return std::to_string(exact->first) + "/" + std::to_string(exact->second);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", alpha);
  return buf;
}

cplx e1(long double t) {
  t -= std::floor(t);
  const long double a = 2 * std::numbers::pi_v<long double> * t;
  return {static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
}

PhaseReducer::PhaseReducer(const TorusPoint& p, int d) : d_(d) {
  require(d >= 1, ErrorCode::invalid_degree, "degree must be >= 1");
  if (p.exact) {
    mode_ = Mode::rational;
    a_ = p.exact->first;
    q_ = p.exact->second;
    return;
  }
  if (p.alpha == 0) {
    mode_ = Mode::fixed;
    return;
  }
  int e = 0;
  const double m = std::frexp(p.alpha, &e);  // alpha = m 2^e, m in [1/2, 1)
  if (e >= -75) {
    mode_ = Mode::fixed;
    const u64 M = static_cast<u64>(std::ldexp(m, 53));
    fixed_ = static_cast<u128>(M) << (75 + e);
  } else {
    mode_ = Mode::tiny;
    tiny_ = p.alpha;
  }
}

long double PhaseReducer::phase(u64 n) const {
  switch (mode_) {
    case Mode::rational: {
      if (q_ == 1) return 0;
      u64 r = 1 % q_;
      const u64 nm = n % q_;
      for (int i = 0; i < d_; ++i) r = static_cast<u64>(static_cast<u128>(r) * nm % q_);
      const u64 t = static_cast<u64>(static_cast<u128>(r) * a_ % q_);
      return static_cast<long double>(t) / q_;
    }
    case Mode::fixed: {
      u128 nd = 1;
      for (int i = 0; i < d_; ++i) nd *= n;  // wraps mod 2^128
      const u128 prod = nd * fixed_;
      return std::ldexp(static_cast<long double>(static_cast<u64>(prod >> 64)), -64);
    }
    case Mode::tiny:
    default: {
      long double v = tiny_;
      for (int i = 0; i < d_; ++i) v *= static_cast<long double>(n);
      return v - std::floor(v);
    }
  }
}

}  // namespace pslab
