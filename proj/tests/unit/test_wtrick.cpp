#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "pslab/wtrick.hpp"
#include "test_util.hpp"

using namespace pslab;
using namespace pslab::wtrick;

namespace {

u64 oracle_powmod(u64 z, int d, u64 W) {
  u64 r = 1 % W;
  for (int i = 0; i < d; ++i) r = r * (z % W) % W;
  return r;
}

u64 oracle_sigma(u64 b, u64 W, int d) {
  u64 target = (W - b % W) % W;
  u64 n = 0;
  for (u64 z = 1; z <= W; ++z) n += oracle_powmod(z, d, W) == target;
  return n;
}

u64 oracle_phi(u64 W) {
  u64 n = 0;
  for (u64 z = 1; z <= W; ++z) n += std::gcd(z, W) == 1;
  return n;
}

}  // namespace

TEST(WParams, FullSizeDefault) {
  auto p = w_params(1000000, 2);
  EXPECT_NEAR(p.w, 0.5 * std::log(std::log(1e6)), 1e-12);
  EXPECT_LT(p.w, 2);
  EXPECT_EQ(p.W, 32u);
  EXPECT_EQ(p.N, 1000000000000ull / 32 + 1);
  EXPECT_EQ(w_params(1000000, 3).W, 108u);
  EXPECT_NEAR(p.heuristic_W, std::sqrt(std::log(1e6)), 1e-12);
  EXPECT_PSLAB_ERROR(w_params(15, 2), ErrorCode::undefined_w);
}

TEST(WParams, NBracketsXd) {
  for (u64 x : {16ull, 100ull, 12345ull, 1000000ull}) {
    for (int d = 2; d <= 3; ++d) {
      auto p = w_params(x, d);
      BigInt xd;
      mpz_ui_pow_ui(xd.get_mpz_t(), x, d);
      BigInt NW = BigInt(static_cast<unsigned long>(p.N)) * static_cast<unsigned long>(p.W);
      EXPECT_GT(NW, xd);
      EXPECT_GE(xd, NW - static_cast<unsigned long>(p.W));
      EXPECT_GE(p.W, static_cast<u64>(4 * d * d * d));
    }
  }
}

TEST(WParams, ToyOverride) {
  auto p = w_params(10, 2, 3);
  EXPECT_TRUE(p.toy);
  EXPECT_EQ(p.W, 3u);
  EXPECT_EQ(p.N, 34u);
  EXPECT_PSLAB_ERROR(w_params(10, 2, 1), ErrorCode::invalid_argument);
}

TEST(Residues, DthPowerUnits) {
  EXPECT_EQ(dth_power_units(32, 2), (std::vector<u64>{1, 9, 17, 25}));
  EXPECT_EQ(dth_power_units(3, 2), (std::vector<u64>{1}));
  auto full = dth_power_units(20, 1);
  EXPECT_EQ(full.size(), oracle_phi(20));
}

TEST(Residues, SigmaExamples) {
  EXPECT_EQ(sigma(31, 32, 2), 4u);
  EXPECT_EQ(sigma(1, 32, 2), 0u);
  EXPECT_EQ(sigma(2, 3, 2), 2u);
  std::vector<u64> adm;
  for (auto& rc : admissible_classes(32, 2)) {
    adm.push_back(rc.b);
    EXPECT_EQ(rc.sigma, 4u);
  }
  EXPECT_EQ(adm, (std::vector<u64>{7, 15, 23, 31}));
}

TEST(Residues, SigmaPhiIdentity) {
  std::mt19937_64 rng(11);
  std::vector<std::pair<u64, int>> cases = {{32, 2}, {108, 3}, {480, 2}, {3, 2}, {864, 3}};
  for (int i = 0; i < 20; ++i) cases.emplace_back(rng() % 9999 + 2, 2 + static_cast<int>(rng() % 3));
  for (auto [W, d] : cases) {
    u64 total = 0;
    for (auto& rc : residue_classes(W, d)) {
      ASSERT_EQ(rc.sigma, oracle_sigma(rc.b, W, d)) << W << " " << d << " " << rc.b;
      if (rc.admissible) {
        EXPECT_GE(rc.sigma, 1u);
        total += rc.sigma;
      }
    }
    EXPECT_EQ(total, oracle_phi(W)) << "W=" << W << " d=" << d;
    EXPECT_EQ(euler_phi(W), oracle_phi(W));
  }
}

TEST(Majorant, EmptySetAndInadmissible) {
  auto p = w_params(1000, 2, 32);
  PSExponent c(21, 20);
  auto m = build_majorant({}, 31, p, c);
  EXPECT_TRUE(m.weights.empty());
  EXPECT_EQ(m.weights.l1(), 0.0);
  std::vector<u64> A{31};
  EXPECT_PSLAB_ERROR(build_majorant(A, 1, p, c), ErrorCode::inadmissible_b);
}

TEST(Majorant, PointWeight) {
  auto p = w_params(1000, 2, 32);
  PSExponent c(21, 20);
  ASSERT_EQ(32u * 31 - 31, 961u);
  std::vector<u64> A{31};
  auto m = build_majorant(A, 31, p, c);
  ASSERT_EQ(m.weights.size(), 1u);
  EXPECT_EQ(m.weights.indices()[0], 31u);
  const double norm = 1.05 * 16.0 / (4.0 * 32.0);
  const double expect = norm * std::pow(31.0, 2.0 - 20.0 / 21.0) * std::log(31.0);
  EXPECT_NEAR(m.weights.at(31), expect, 1e-12 * expect);
  auto u = build_majorant(A, 31, p, c, {}, Normalization::unit_mean);
  EXPECT_NEAR(u.weights.at(31), 2 * expect, 1e-12 * expect);
}

TEST(Majorant, SupportAndMassBand) {
  PSExponent c(21, 20);
  auto p = w_params(1000000, 2);
  auto A = ps_primes(1000000, c).members;
  auto choice = choose_b(A, p, c);
  auto m = build_majorant(A, choice.b, p, c, Exec{2, false});
  auto seq = build_majorant(A, choice.b, p, c);
  EXPECT_EQ(m.weights.values().size(), seq.weights.values().size());
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    ASSERT_EQ(m.weights.indices()[i], seq.weights.indices()[i]);
    ASSERT_EQ(m.weights.values()[i], seq.weights.values()[i]);
  }
  EXPECT_NEAR(m.weights.l1(), choice.mass, 1e-9 * choice.mass);
  const double ratio = m.weights.l1() / static_cast<double>(p.N);
  EXPECT_GT(ratio, 0.25);
  EXPECT_LT(ratio, 4.0);
  for (u64 n : m.weights.indices()) {
    ASSERT_GE(n, 1u);
    ASSERT_LE(n, p.N);
  }
  auto lifted = lift(A, choice.b, p);
  for (u64 n : lifted.members) EXPECT_TRUE(m.weights.contains(n));
}

TEST(ChooseB, ArgmaxPigeonholeAndTies) {
  PSExponent c(21, 20);
  auto p = w_params(1000000, 2);
  auto A = ps_primes(1000000, c).members;
  auto choice = choose_b(A, p, c);
  ASSERT_EQ(choice.masses.size(), 4u);
  double best = 0;
  u64 best_b = 0;
  for (auto [b, mass] : choice.masses) {
    auto m = build_majorant(A, b, p, c);
    EXPECT_NEAR(m.weights.l1(), mass, 1e-9 * std::max(1.0, mass));
    if (mass > best) best = mass, best_b = b;
  }
  EXPECT_EQ(choice.b, best_b);
  EXPECT_GE(choice.mass, choice.average_mass);

  auto empty = choose_b({}, p, c);
  EXPECT_EQ(empty.b, 7u);
  EXPECT_EQ(empty.mass, 0.0);
  // W=3, d=2: only b=2 is admissible.
  auto single = choose_b(A, w_params(1000, 2, 3), c);
  EXPECT_EQ(single.b, 2u);
  // Even W with d=2 and W=2: -b=1 always, single class b=1.
  auto w2 = w_params(1000, 2, 2);
  EXPECT_EQ(choose_b(A, w2, c).b, 1u);
}

// z = 1 is always a unit, so b = W - 1 is always admissible.
TEST(ChooseB, MinusOneAlwaysAdmissible) {
  for (u64 W = 2; W < 200; ++W)
    for (int d = 2; d <= 4; ++d) EXPECT_TRUE(residue_class(W - 1, W, d).admissible) << W;
}

TEST(Lift, PartitionAndRoundTrip) {
  PSExponent c(21, 20);
  const u64 x = 10000;
  auto A = ps_primes(x, c).members;
  for (auto [W, d] : std::vector<std::pair<u64, int>>{{32, 2}, {108, 3}, {480, 2}}) {
    auto p = w_params(x, d, W);
    std::size_t total = 0;
    for (auto& rc : admissible_classes(W, d)) {
      auto L = lift(A, rc.b, p);
      std::size_t expect = 0;
      std::vector<u64> in_class;
      for (u64 q : A)
        if (oracle_powmod(q, d, W) == (W - rc.b) % W) ++expect, in_class.push_back(q);
      EXPECT_EQ(L.members.size(), expect);
      total += L.members.size();
      auto back = unlift(L, p);
      std::sort(back.begin(), back.end());
      EXPECT_EQ(back, in_class);
    }
    std::size_t coprime = 0;
    for (u64 q : A) coprime += std::gcd(q, W) == 1;
    EXPECT_EQ(total, coprime) << W;
  }
  // p^d not congruent to -b gives nothing.
  auto p32 = w_params(x, 2, 32);
  std::vector<u64> one{31};
  EXPECT_TRUE(lift(one, 7, p32).members.empty());
}

TEST(Tau, ExampleAndSupport) {
  PSExponent c(3, 2);
  auto p = w_params(100, 2, 3);
  auto tau = build_tau(c, 2, p);
  // m = 8 lies in N^{3/2}; 64 + 2 = 3 * 22.
  EXPECT_NEAR(tau.at(22), 1.5 / 2.0 * std::pow(8.0, 2.0 - 2.0 / 3.0), 1e-12);
  auto primes = ps_primes(100, c).members;
  auto nu = build_majorant(primes, 2, p, c);
  auto mu = build_mu(2, p);
  for (u64 n : nu.weights.indices()) EXPECT_TRUE(tau.contains(n));
  for (u64 n : tau.indices()) EXPECT_TRUE(mu.contains(n));
  for (double v : tau.values()) EXPECT_GE(v, 0.0);
}

TEST(Mu, MassExample) {
  auto p = w_params(10, 2, 3);
  auto mu = build_mu(2, p);
  EXPECT_NEAR(mu.l1(), 37.0 / 2.0, 1e-12);
  // Reindexing identity on a larger case.
  auto p2 = w_params(500, 2, 32);
  auto mu2 = build_mu(31, p2);
  double expect = 0;
  for (u64 m = 1; m <= 500; ++m)
    if (oracle_powmod(m, 2, 32) == 1) expect += static_cast<double>(m) / 4.0;
  EXPECT_NEAR(mu2.l1(), expect, 1e-9 * expect);
}

TEST(DensityTransfer, MassAboveDeltaPower) {
  PSExponent c(21, 20);
  for (u64 x : {100000ull, 1000000ull}) {
    auto p = w_params(x, 2);
    auto A = ps_primes(x, c).members;
    auto choice = choose_b(A, p, c);
    auto t = density_transfer(A.size(), choice, p, c);
    EXPECT_GT(t.delta, 0.5);
    EXPECT_LT(t.delta, 2.0);
    EXPECT_GE(t.chosen_mass, t.delta_d_N / 100.0) << x;
  }
}
