#include "pslab/weyl.hpp"

#include <cmath>

#include "pslab/error.hpp"
#include "pslab/exponents.hpp"

namespace pslab::expsum {
namespace {

// Sums term(i) over [0, n) in per-worker chunks, merged in chunk order.
template <class Term>
cplx chunked_sum(std::size_t n, const Exec& exec, Term&& term) {
  std::vector<cplx> parts(chunk_count(n, exec));
  parallel_chunks(n, exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    cplx acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    parts[w] = acc;
  });
  cplx total{};
  for (const cplx& p : parts) total += p;
  return total;
}

double pow_ld(u64 m, long double e) {
  return static_cast<double>(std::exp(e * std::log(static_cast<long double>(m))));
}

}  // namespace

cplx weyl_sum(u64 x, int d, const TorusPoint& alpha, const Exec& exec) {
  const PhaseReducer ph(alpha, d);
  return chunked_sum(x, exec, [&](std::size_t i) { return ph.term(i + 1); });
}

cplx ps_weighted_sum(u64 x, const PSExponent& c, int d, const TorusPoint& theta, const Exec& exec) {
  const PhaseReducer ph(theta, d);
  const std::vector<u64> members = ps_integers(x, c);
  const long double e = d - static_cast<long double>(c.q()) / c.p();
  const double cv = c.as_double();
  return chunked_sum(members.size(), exec, [&](std::size_t i) {
    const u64 m = members[i];
    return cv * pow_ld(m, e) * ph.term(m);
  });
}

cplx smooth_weighted_sum(u64 x, int d, const TorusPoint& theta, const Exec& exec) {
  const PhaseReducer ph(theta, d);
  return chunked_sum(x, exec, [&](std::size_t i) {
    const u64 m = i + 1;
    return std::pow(static_cast<double>(m), d - 1) * ph.term(m);
  });
}

Discrepancy discrepancy(u64 x, const PSExponent& c, int d, const TorusPoint& theta, const Exec& exec) {
  require(x >= 1, ErrorCode::invalid_argument, "x must be >= 1");
  Discrepancy r;
  r.ps = ps_weighted_sum(x, c, d, theta, exec);
  r.smooth = smooth_weighted_sum(x, d, theta, exec);
  r.value = std::abs(r.ps - r.smooth);
  r.admissible = c.value() < 1 + exponents::c_bounds(d).c3;
  const double th = to_double(exponents::theta(d, c.value()));
  r.envelope_exp = d - (1 - th) / c.as_double();
  r.envelope = std::pow(static_cast<double>(x), r.envelope_exp);
  r.ratio = r.value / r.envelope;
  return r;
}

cplx weight_transform(const SparseWeights& f, const TorusPoint& alpha, const Exec& exec) {
  const PhaseReducer ph(alpha, 1);
  const auto idx = f.indices();
  const auto val = f.values();
  return chunked_sum(idx.size(), exec, [&](std::size_t i) { return val[i] * ph.term(idx[i]); });
}

}  // namespace pslab::expsum
