#include <cmath>
#include <random>
#include <set>

#include "pslab/ps_core.hpp"
#include "test_util.hpp"

using namespace pslab;

namespace {

// floor(n^{p/q}) through GMP's own integer root, independent of the library's
// binary search.
u64 oracle_floor_pow(u64 n, unsigned p, unsigned q) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), n, p);
  mpz_class r;
  mpz_root(r.get_mpz_t(), v.get_mpz_t(), q);
  return r.get_ui();
}

std::vector<u64> oracle_ps_integers(u64 x, const PSExponent& c) {
  std::vector<u64> out;
  for (u64 n = 1;; ++n) {
    u64 m = oracle_floor_pow(n, c.p(), c.q());
    if (m > x) break;
    out.push_back(m);
  }
  return out;
}

bool trial_division(u64 n) {
  if (n < 2) return false;
  for (u64 f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

}  // namespace

TEST(FloorRootPower, Examples) {
  EXPECT_EQ(floor_root_power(BigInt(4), 3, 2), 8);
  EXPECT_EQ(floor_root_power(BigInt(2), 3, 2), 2);
  EXPECT_EQ(floor_root_power(BigInt(10), 2, 3), 4);
  EXPECT_EQ(floor_root_power(u64{4}, 3, 2), 8u);
  EXPECT_TRUE(floor_root_power_exact(BigInt(4), 3, 2).exact);
  EXPECT_FALSE(floor_root_power_exact(BigInt(2), 3, 2).exact);
  EXPECT_EQ(floor_root_power(u64{0}, 3, 2), 0u);
}

TEST(FloorRootPower, MatchesGmpRoot) {
  std::mt19937_64 rng(7);
  const unsigned exps[][2] = {{3, 2}, {21, 20}, {2, 3}, {11, 10}, {6, 5}, {7, 3}, {1, 5}};
  for (auto [a, b] : exps) {
    for (int i = 0; i < 2000; ++i) {
      u64 n = rng() % 1000000 + 1;
      if (a > 3) n %= 5000;
      ASSERT_EQ(floor_root_power(n, a, b), oracle_floor_pow(n, a, b)) << n << "^" << a << "/" << b;
      ASSERT_EQ(floor_root_power(BigInt(static_cast<unsigned long>(n)), a, b).get_ui(),
                oracle_floor_pow(n, a, b));
    }
  }
  // Perfect powers sit exactly on the boundary.
  for (u64 r = 1; r < 3000; ++r) {
    ASSERT_EQ(floor_root_power(r * r * r, 1, 3), r);
    ASSERT_EQ(floor_root_power(r * r * r - 1, 1, 3), r - 1);
  }
}

TEST(PSExponent, Validation) {
  EXPECT_EQ(PSExponent(42, 40).p(), 21u);
  EXPECT_PSLAB_ERROR(PSExponent(1, 1), ErrorCode::invalid_exponent);
  EXPECT_PSLAB_ERROR(PSExponent(2, 1), ErrorCode::invalid_exponent);
  EXPECT_PSLAB_ERROR(PSExponent::parse("1"), ErrorCode::invalid_exponent);
  EXPECT_EQ(PSExponent::parse("3/2"), PSExponent(3, 2));
}

TEST(Membership, Examples) {
  PSExponent c(3, 2);
  EXPECT_TRUE(is_ps_member(5, c));
  EXPECT_FALSE(is_ps_member(4, c));
  EXPECT_TRUE(is_ps_member(8, c));
  EXPECT_TRUE(is_ps_member(1, c));
  EXPECT_TRUE(is_ps_member(1, PSExponent(21, 20)));
}

TEST(Membership, EnumerationOracle) {
  for (auto c : {PSExponent(21, 20), PSExponent(6, 5), PSExponent(3, 2)}) {
    const u64 x = 100000;
    std::vector<u64> seq = oracle_ps_integers(x, c);
    std::set<u64> members(seq.begin(), seq.end());
    ASSERT_EQ(members.size(), seq.size());  // floor(n^c) is injective for c > 1
    for (u64 m = 1; m <= x; ++m) {
      int ind = ps_indicator(m, c);
      ASSERT_TRUE(ind == 0 || ind == 1);
      ASSERT_EQ(ind == 1, members.count(m) == 1) << m << " c=" << c.str();
    }
    EXPECT_EQ(ps_integers(x, c), seq);
  }
}

TEST(Membership, CountNearRoot) {
  for (auto c : {PSExponent(21, 20), PSExponent(3, 2)}) {
    for (u64 x : {10ull, 1000ull, 123456ull, 1000000ull}) {
      u64 cnt = ps_integer_count(x, c);
      // n^c < x+1 exactly: count n with floor(n^c) <= x.
      u64 n = 0;
      while (oracle_floor_pow(n + 1, c.p(), c.q()) <= x) ++n;
      EXPECT_EQ(cnt, n);
      double r = std::pow(static_cast<double>(x), c.inverse());
      EXPECT_LE(std::fabs(static_cast<double>(cnt) - std::floor(r)), 1.0);
    }
  }
}

TEST(Sieve, Examples) {
  EXPECT_EQ(sieve_primes(10), (std::vector<u64>{2, 3, 5, 7}));
  EXPECT_EQ(sieve_primes(100).size(), 25u);
  EXPECT_EQ(sieve_primes(1000000).size(), 78498u);
  EXPECT_EQ(sieve_primes(2), (std::vector<u64>{2}));
}

TEST(Sieve, TrialDivisionOracle) {
  std::vector<u64> expect;
  for (u64 n = 2; n <= 10000; ++n)
    if (trial_division(n)) expect.push_back(n);
  EXPECT_EQ(sieve_primes(10000), expect);
}

TEST(Sieve, SegmentBoundariesAndThreads) {
  // Spans several 2^20-byte segments; thread count must not change the result.
  const u64 x = 40000000;
  auto a = sieve_primes(x);
  auto b = sieve_primes(x, Exec{4, false});
  EXPECT_EQ(a.size(), 2433654u);
  EXPECT_EQ(a, b);
}

TEST(PSPrimes, Examples) {
  EXPECT_EQ(ps_primes(11, PSExponent(3, 2)).members, (std::vector<u64>{2, 5, 11}));
  EXPECT_TRUE(ps_primes(1, PSExponent(3, 2)).members.empty());
  auto near_one = ps_primes(50, PSExponent(101, 100)).members;
  auto all = sieve_primes(50);
  EXPECT_GE(near_one.size() + 3, all.size());
}

TEST(PSPrimes, EnumerationOracle) {
  for (auto c : {PSExponent(21, 20), PSExponent(11, 10), PSExponent(3, 2), PSExponent(7, 4)}) {
    const u64 x = 200000;
    std::vector<u64> expect;
    for (u64 m : oracle_ps_integers(x, c))
      if (trial_division(m)) expect.push_back(m);
    EXPECT_EQ(ps_primes(x, c).members, expect) << c.str();
    EXPECT_EQ(ps_primes(x, c, Exec{3, false}).members, expect);
  }
}

// Frozen from an independent enumeration (floor(n^c) for every n, then a
// primality test), run once outside this code base.
TEST(PntRatio, FrozenCounts) {
  PSExponent c(21, 20);
  const u64 xs[] = {10000, 100000, 1000000};
  const u64 counts[] = {779, 5449, 40489};
  double prev = 1e9;
  for (int i = 0; i < 3; ++i) {
    auto r = pnt_ratio(xs[i], c);
    EXPECT_EQ(r.count, counts[i]);
    double expect = counts[i] * std::log(double(xs[i])) / std::pow(double(xs[i]), 20.0 / 21.0);
    EXPECT_NEAR(r.ratio, expect, 1e-12);
    EXPECT_LE(std::fabs(r.ratio - 1), 1.2 * prev);
    prev = std::fabs(r.ratio - 1);
    EXPECT_TRUE(r.in_proven_range);
  }
  auto small = pnt_ratio(1000, c);
  EXPECT_GT(small.ratio, 0.5);
  EXPECT_LT(small.ratio, 2.0);
  EXPECT_FALSE(pnt_ratio(1000, PSExponent(3, 2)).in_proven_range);
}
