#include "pslab/mean_value.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pslab/error.hpp"
#include "pslab/fourier.hpp"

namespace pslab::expsum {
namespace {

// Calls visit(sum) for every ordered k-tuple in [x]^k, sum of d-th powers.
template <class Visit>
void tuple_sums(const std::vector<u64>& powers, int k, u64 partial, Visit&& visit) {
  if (k == 0) {
    visit(partial);
    return;
  }
  for (u64 p : powers) tuple_sums(powers, k - 1, partial + p, visit);
}

}  // namespace

BigInt mean_value_count(u64 x, int d, int S, const Exec& exec) {
  require(d >= 1, ErrorCode::invalid_degree, "d must be >= 1");
  require(S >= 2 && S % 2 == 0, ErrorCode::invalid_argument, "S must be a positive even integer");
  if (x == 0) return 0;
  const int k = S / 2;
  const BigInt top_big = BigInt(k) * to_bigint(static_cast<u128>(checked_pow(x, static_cast<unsigned>(d))));
  require(top_big < BigInt("9000000000000000000"), ErrorCode::overflow, "sums of d-th powers exceed 63 bits");
  const u64 top = to_u64(top_big);
  std::vector<u64> powers(x);
  for (u64 n = 1; n <= x; ++n) powers[n - 1] = static_cast<u64>(checked_pow(n, static_cast<unsigned>(d)));

  u128 total = 0;
  if (top + 1 <= kMeanValueDenseLimit) {
    std::vector<std::uint32_t> hist(top + 1, 0);
    tuple_sums(powers, k, 0, [&](u64 s) { ++hist[s]; });
    std::vector<u128> parts(chunk_count(hist.size(), exec), 0);
    parallel_chunks(hist.size(), exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
      u128 acc = 0;
      for (std::size_t i = lo; i < hi; ++i) acc += static_cast<u128>(hist[i]) * hist[i];
      parts[w] = acc;
    });
    for (u128 p : parts) total += p;
  } else {
    const double entries = std::pow(static_cast<double>(x), k);
    require(entries <= 4e8, ErrorCode::split_refused,
            "key table of " + std::to_string(entries) + " sums exceeds the memory budget");
    std::vector<u64> keys;
    keys.reserve(static_cast<std::size_t>(entries));
    tuple_sums(powers, k, 0, [&](u64 s) { keys.push_back(s); });
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      const u128 m = j - i;
      total += m * m;
      i = j;
    }
  }
  return to_bigint(total);
}

QuadratureCheck quadrature_vs_count(u64 x, int d, int S, u64 M, const Exec& exec) {
  require(S >= 2 && S % 2 == 0, ErrorCode::invalid_argument, "S must be a positive even integer");
  const u128 xd = checked_pow(x, static_cast<unsigned>(d));
  require(static_cast<u128>(M) > xd * static_cast<u128>(S), ErrorCode::aliasing_error,
          "M = " + std::to_string(M) + " must exceed S x^d = " + pslab::to_string(xd * static_cast<u128>(S)));
  QuadratureCheck r;
  r.M = M;
  std::vector<double> f(static_cast<std::size_t>(xd), 0.0);
  for (u64 n = 1; n <= x; ++n) f[static_cast<std::size_t>(checked_pow(n, static_cast<unsigned>(d))) - 1] += 1.0;
  const FourierGrid g = fourier_grid(f, M, "weyl");
  r.quadrature = grid_moment(g, S);
  r.count = mean_value_count(x, d, S, exec);
  const double c = r.count.get_d();
  r.rel_error = c == 0 ? std::fabs(r.quadrature) : std::fabs(r.quadrature - c) / c;
  return r;
}

}  // namespace pslab::expsum
