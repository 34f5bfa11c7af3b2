#include <cmath>
#include <cstring>
#include <vector>

#include "pslab/ps_core.hpp"

namespace pslab {
namespace {

std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Sieves odd numbers in [lo, hi) (lo odd) into `out`.
void sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base, std::vector<unsigned char>& flags,
                   std::vector<u64>& out) {
  const u64 count = (hi - lo + 1) / 2;  // odd numbers lo, lo+2, ..., < hi
  flags.assign(count, 1);
  for (u64 p : base) {
    if (p == 2) continue;
    if (p * p >= hi) break;
    u64 start = p * p;
    if (start < lo) {
      start = ((lo + p - 1) / p) * p;
      if (start % 2 == 0) start += p;
    }
    for (u64 m = start; m < hi; m += 2 * p) flags[(m - lo) / 2] = 0;
  }
  for (u64 i = 0; i < count; ++i)
    if (flags[i]) out.push_back(lo + 2 * i);
}

}  // namespace

std::vector<u64> sieve_primes(u64 x, const Exec& exec) {
  std::vector<u64> primes;
  if (x < 2) return primes;
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 1;
  const std::vector<u64> base = small_primes(root);

  primes.push_back(2);
  const u64 span = 2 * static_cast<u64>(kSieveSegmentBytes);  // odd-only: one byte per odd number
  const u64 first = 3;
  const u64 n_segments = x < first ? 0 : (x - first) / span + 1;

  std::vector<std::vector<u64>> parts(chunk_count(n_segments, exec));
  parallel_chunks(n_segments, exec, [&](std::size_t w, std::size_t seg_lo, std::size_t seg_hi) {
    std::vector<unsigned char> flags;
    for (std::size_t s = seg_lo; s < seg_hi; ++s) {
      const u64 lo = first + s * span;
      const u64 hi = std::min<u64>(lo + span, x + 1);
      sieve_segment(lo, hi, base, flags, parts[w]);
    }
  });
  for (auto& part : parts) primes.insert(primes.end(), part.begin(), part.end());
  return primes;
}

}  // namespace pslab
