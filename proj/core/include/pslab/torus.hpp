#pragma once

#include <complex>
#include <optional>
#include <string>

#include "pslab/rational.hpp"

namespace pslab {

using cplx = std::complex<double>;

/// A point of the torus [0,1), optionally carrying its exact form a/q.
struct TorusPoint {
  double alpha = 0;
  std::optional<std::pair<u64, u64>> exact;  // (a, q), 0 <= a < q

  static TorusPoint from_double(double a);
  static TorusPoint from_rational(i64 a, u64 q);
  /// "0.25" or "1/4".
  static TorusPoint parse(const std::string& text);
  std::string str() const;
};

/// e(t) = exp(2 pi i t).
cplx e1(long double t);

/// frac(alpha * n^d) without forming alpha * n^d in floating point.
///
/// Rational points reduce n^d mod q. Doubles >= 2^-75 are exact 128-bit fixed
/// point numbers, so the phase is an exact wrapping product mod 2^128. Smaller
/// doubles fall back to long double.
class PhaseReducer {
 public:
  PhaseReducer(const TorusPoint& p, int d);

  long double phase(u64 n) const;
  cplx term(u64 n) const { return e1(phase(n)); }

 private:
  enum class Mode { rational, fixed, tiny } mode_;
  int d_;
  u64 a_ = 0, q_ = 1;
  u128 fixed_ = 0;
  long double tiny_ = 0;
};

}  // namespace pslab
