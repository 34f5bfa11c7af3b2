#include "pslab/arcs.hpp"

#include <cmath>
#include <numbers>

#include "pslab/error.hpp"
#include "pslab/exponents.hpp"
#include "pslab/weyl.hpp"

namespace pslab::expsum {

RationalApprox dirichlet_approx(const TorusPoint& alpha, u64 Q) {
  require(Q >= 1, ErrorCode::invalid_argument, "Q must be >= 1");
  Rational x;
  if (alpha.exact)
    x = Rational(to_bigint(static_cast<u128>(alpha.exact->first)), to_bigint(static_cast<u128>(alpha.exact->second)));
  else
    mpq_set_d(x.get_mpq_t(), alpha.alpha);
  x.canonicalize();
  const BigInt Qb = to_bigint(static_cast<u128>(Q));
  BigInt h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  BigInt best_h = 0, best_k = 1;
  for (;;) {
    BigInt ai;
    mpz_fdiv_q(ai.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    const BigInt h = ai * h1 + h2;
    const BigInt k = ai * k1 + k2;
    if (k > Qb) break;
    best_h = h;
    best_k = k;
    const Rational frac = x - Rational(ai);
    if (sgn(frac) == 0) break;
    x = 1 / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  RationalApprox r;
  r.a = to_u64(best_h);
  r.q = to_u64(best_k);
  Rational target;
  if (alpha.exact)
    target = Rational(to_bigint(static_cast<u128>(alpha.exact->first)), to_bigint(static_cast<u128>(alpha.exact->second)));
  else
    mpq_set_d(target.get_mpq_t(), alpha.alpha);
  const Rational diff = abs(target - Rational(best_h, best_k));
  r.error = diff.get_d();
  return r;
}

ArcThreshold parse_arc_threshold(const std::string& text) {
  if (text == "literal") return ArcThreshold::literal;
  if (text == "w-normalized") return ArcThreshold::w_normalized;
  fail(ErrorCode::parse_error, "arc threshold must be literal or w-normalized, got '" + text + "'");
}

std::string to_string(ArcThreshold t) { return t == ArcThreshold::literal ? "literal" : "w-normalized"; }

ArcLabel classify_arc(const TorusPoint& alpha, const SparseWeights& mu, u64 x, int d, ArcThreshold mode, u64 Q,
                      const Exec& exec) {
  require(x >= 2, ErrorCode::invalid_argument, "classify_arc needs x >= 2");
  const double N = static_cast<double>(std::max<u64>(mu.N(), 1));
  const double rho = to_double(exponents::rho(d));
  ArcLabel r;
  r.witness = std::abs(weight_transform(mu, alpha, exec));
  r.threshold = mode == ArcThreshold::literal ? std::pow(static_cast<double>(x), d - rho / 2)
                                              : std::pow(N, 1 - rho / (2 * d));
  if (r.witness <= r.threshold) return r;
  r.major = true;
  if (Q == 0) Q = std::max<u64>(1, static_cast<u64>(std::floor(std::sqrt(N))));
  const RationalApprox ap = dirichlet_approx(alpha, Q);
  r.q = ap.q;
  r.a = ap.a % ap.q;
  const double L = std::log(static_cast<double>(x));
  r.envelope = N * L * std::pow(static_cast<double>(r.q), -1.0 / d) * std::pow(1 + N * ap.error, -1.0 / d);
  r.ratio = r.witness / r.envelope;
  return r;
}

double g2_kernel(double alpha, u64 Q, double N, int d, double kappa, double eps) {
  require(Q >= 1, ErrorCode::invalid_argument, "Q must be >= 1");
  require(kappa > d, ErrorCode::invalid_argument, "kappa must exceed d");
  const long double e = static_cast<long double>(kappa) / d;
  long double s = 0;
  for (u64 q = 1; q <= Q; ++q) {
    const long double qw = std::pow(static_cast<long double>(q), kappa * eps - e);
    for (u64 a = 0; a < q; ++a) {
      const long double t = static_cast<long double>(alpha) - static_cast<long double>(a) / q;
      s += qw / std::pow(1 + N * std::fabs(std::sin(std::numbers::pi_v<long double> * t)), e);
    }
  }
  return static_cast<double>(s);
}

}  // namespace pslab::expsum
