#include <cmath>

#include "pslab/exponents.hpp"
#include "test_util.hpp"

using namespace pslab;
using namespace pslab::exponents;

namespace {

Rational Q(long p, long q = 1) { return make_rational(p, q); }

// Oracle rebuilt from scratch: the active h/k/l value per degree.
Rational oracle_saving(int d) {
  const long dl = d;
  if (d <= 11) return Q(1, dl * (dl + 1) * (dl + 1) - 1);
  return d % 2 == 0 ? Q(2, 27 * dl * dl - 14) : Q(2, 27 * dl * dl - 5);
}

Rational oracle_c2(int d) {
  if (d == 2) return Q(1, 54);
  if (d == 3) return Q(1, 495);
  const long S = (d % 2 == 0) ? long(d) * d : long(d) * d - 1;
  Rational t = oracle_saving(d);
  Rational r = 2 * t / (4 * S + 1 - t);
  r.canonicalize();
  return r;
}

Rational oracle_c1(int d) {
  if (d == 2) return Q(7, 75);
  if (d == 3) return Q(3, 77);
  const long dl = d;
  Rational h = Q(1, dl * (dl + 1) * (dl + 1) - 1);
  Rational kl = d % 2 == 0 ? Q(2, 27 * dl * dl - 14) : Q(2, 27 * dl * dl - 5);
  return h < kl ? h : kl;
}

}  // namespace

TEST(DegreeParams, Examples) {
  EXPECT_EQ(degree_params(2).S, 4);
  EXPECT_EQ(degree_params(2).s_bar, 5);
  EXPECT_EQ(degree_params(3).S, 8);
  EXPECT_EQ(degree_params(3).s_bar, 9);
  EXPECT_EQ(degree_params(5).S, 24);
  EXPECT_EQ(degree_params(5).s_bar, 25);
  EXPECT_PSLAB_ERROR(degree_params(1), ErrorCode::invalid_degree);
}

TEST(DegreeParams, ParityInvariant) {
  for (int d = 2; d <= 50; ++d) {
    auto p = degree_params(d);
    EXPECT_EQ(p.S % 2, 0);
    EXPECT_EQ(p.S, d % 2 == 0 ? d * d : d * d - 1);
    EXPECT_EQ(p.s_bar, p.S + 1);
  }
}

TEST(Hkl, Examples) {
  EXPECT_EQ(hkl(4).h, Q(1, 99));
  EXPECT_EQ(hkl(12).k, Q(2, 3874));
  EXPECT_EQ(hkl(13).l, Q(2, 4558));
  EXPECT_PSLAB_ERROR(hkl(3), ErrorCode::out_of_domain);
}

TEST(Hkl, PositiveAndDecreasing) {
  for (int d = 4; d < 50; ++d) {
    auto a = hkl(d), b = hkl(d + 1);
    EXPECT_GT(b.h, 0);
    EXPECT_LT(b.h, a.h);
    EXPECT_LT(b.k, a.k);
    EXPECT_LT(b.l, a.l);
  }
}

TEST(Theta, Examples) {
  EXPECT_EQ(theta(2, Q(1)), Q(11, 13));
  EXPECT_EQ(theta(4, Q(1)), Q(98, 99));
  EXPECT_EQ(theta(13, Q(3, 2)), Q(5 * 4556, 4 * 4558));
  EXPECT_EQ(theta(3, Q(1)), Q(29, 30));
}

TEST(CBounds, PrintedValues) {
  auto b2 = c_bounds(2);
  EXPECT_EQ(b2.c1, Q(7, 75));
  EXPECT_EQ(b2.c2, Q(1, 54));
  EXPECT_EQ(b2.c3, Q(1, 2));
  auto b3 = c_bounds(3);
  EXPECT_EQ(b3.c1, Q(3, 77));
  EXPECT_EQ(b3.c2, Q(1, 495));
  EXPECT_EQ(b3.c3, Q(1, 15));
  EXPECT_EQ(c_bounds(4).c3, Q(1, 49));
}

TEST(CBounds, MatchIndependentOracle) {
  for (int d = 2; d <= 50; ++d) {
    auto b = c_bounds(d);
    EXPECT_EQ(b.c1, oracle_c1(d)) << d;
    EXPECT_EQ(b.c2, oracle_c2(d)) << d;
  }
}

TEST(CBounds, OrderingInvariants) {
  const Rational cap = Q(391, 2426);
  for (int d = 2; d <= 50; ++d) {
    auto b = c_bounds(d);
    EXPECT_LE(b.c2, b.c1) << d;
    EXPECT_LE(b.c1, cap) << d;
    EXPECT_LT(b.c2, b.c3) << d;
    EXPECT_GT(b.c2, 0);
  }
}

// In the large-degree regime the sawtooth proof reaches the same radius
// through v0: 1 + c3 = 1/(1 - v0).
TEST(CBounds, C3AgreesWithV0Route) {
  for (int d = 12; d <= 50; ++d) {
    Rational v0 = d0_v0(d).v0;
    Rational alt = v0 / (1 - v0);
    alt.canonicalize();
    EXPECT_EQ(c_bounds(d).c3, alt) << d;
  }
}

TEST(COf, Examples) {
  EXPECT_EQ(c_of(2, 5), Q(1, 54));
  EXPECT_EQ(c_of(3, 9), Q(1, 495));
  EXPECT_EQ(c_of(2, 1000), Q(1, 1999));
  EXPECT_PSLAB_ERROR(c_of(2, 4), ErrorCode::too_few_variables);
}

TEST(COf, PrintedFamiliesForLowDegree) {
  for (int s = 5; s <= 200; ++s) {
    Rational alt = Q(1, 2 * s - 1);
    EXPECT_EQ(c_of(2, s), Q(1, 54) < alt ? Q(1, 54) : alt);
  }
  for (int s = 9; s <= 200; ++s) {
    Rational alt = Q(3, 8 * s - 3);
    EXPECT_EQ(c_of(3, s), Q(1, 495) < alt ? Q(1, 495) : alt);
  }
}

TEST(COf, DisplayEqualsMinForm) {
  for (int d = 2; d <= 50; ++d) {
    const int sb = degree_params(d).s_bar;
    for (int s = sb; s <= 3 * sb; ++s) {
      ASSERT_EQ(c_of_display(d, s), c_of_min(d, s)) << "d=" << d << " s=" << s;
      Rational oracle_var = Q(d, long(s) * (sb - 1) - d);
      Rational expect = oracle_c2(d) < oracle_var ? oracle_c2(d) : oracle_var;
      ASSERT_EQ(c_of(d, s), expect);
      ASSERT_GT(c_of(d, s), 0);
    }
  }
}

TEST(ThetaGrid, ExcessInUnitInterval) {
  for (int d = 2; d <= 50; ++d) {
    const Rational c2 = c_bounds(d).c2;
    const int S = degree_params(d).S;
    for (int i = 1; i <= 100; ++i) {
      Rational c = 1 + c2 * Q(i, 101);
      c.canonicalize();
      Rational th = theta(d, c);
      ASSERT_GT(th, 0);
      ASSERT_LT(th, 1);
      Rational excess = 2 * S * (c - 1) / (1 - th);
      ASSERT_GT(excess, 0);
      ASSERT_LT(excess, 1) << "d=" << d << " c=" << to_pq(c);
      EXPECT_EQ(u_threshold(d, c).excess, excess);
    }
  }
}

TEST(Eta, Examples) {
  EXPECT_EQ(eta(2, 5, Q(1), Q(0)).eta, Q(1, 4));
  auto at_edge = eta(2, 5, 1 + Q(1, 9), Q(0));
  EXPECT_EQ(at_edge.eta, 0);
  EXPECT_FALSE(at_edge.admissible);
  EXPECT_PSLAB_ERROR(eta_checked(2, 5, 1 + Q(1, 9), Q(0)), ErrorCode::inadmissible_c);

  Rational c = Q(101, 100);
  Rational expect = (3 * c - 9 * Q(1, 100) * 8) / (3 * c * 8) - Q(1, 1000);
  expect.canonicalize();
  EXPECT_EQ(eta(3, 9, c, Q(1, 1000)).eta, expect);
}

TEST(Eta, SignMatchesLimit) {
  for (int d = 2; d <= 8; ++d) {
    const int sb = degree_params(d).s_bar;
    for (int s = sb; s <= sb + 5; ++s) {
      Rational lim = eta_c_limit(d, s);
      for (int i = 0; i <= 40; ++i) {
        Rational c = 1 + (lim - 1) * Q(i, 20);
        c.canonicalize();
        EXPECT_EQ(eta(d, s, c, Q(0)).margin > 0, c < lim) << d << " " << s << " " << to_pq(c);
      }
    }
  }
}

TEST(Rho, Examples) {
  EXPECT_EQ(rho(2), Q(1, 2));
  EXPECT_EQ(rho(8), Q(1, 128));
  EXPECT_EQ(rho(9), Q(1, 228));
}

TEST(D0V0, Examples) {
  EXPECT_EQ(d0_v0(12).d0, 18);
  EXPECT_EQ(d0_v0(12).v0, Q(1, 969));
  EXPECT_EQ(d0_v0(13).d0, 19);
  EXPECT_EQ(d0_v0(13).v0, Q(1, 1140));
  EXPECT_EQ(d0_v0(14).d0, 21);
  EXPECT_EQ(d0_v0(14).v0, Q(1, 1320));
  EXPECT_PSLAB_ERROR(d0_v0(11), ErrorCode::out_of_domain);
}

TEST(UThreshold, Examples) {
  // c -> 1+: threshold tends to S = 4.
  EXPECT_EQ(u_threshold(2, Q(1)).threshold, 4);
  Rational c = 1 + Q(1, 54);
  Rational th = (4 * c + 7) / 13;
  Rational expect = 4 * (1 + (2 * Q(1, 54)) / (1 - th));
  expect.canonicalize();
  auto u = u_threshold(2, c);
  EXPECT_EQ(u.threshold, expect);
  // At the closed end c = 1 + c2 the excess reaches 1 exactly; it is < 1
  // only on the open interval.
  EXPECT_EQ(u.excess, 1);
  EXPECT_EQ(u_threshold(3, 1 + Q(1, 495)).excess, 1);
  auto u3 = u_threshold(3, 1 + Q(1, 496));
  EXPECT_GT(u3.excess, 0);
  EXPECT_LT(u3.excess, 1);
}

// c2 is exactly the radius where the excess 2S(c-1)/(1-theta) hits 1.
TEST(UThreshold, ExcessIsOneAtC2) {
  for (int d = 2; d <= 50; ++d) EXPECT_EQ(u_threshold(d, 1 + c_bounds(d).c2).excess, 1) << d;
}

TEST(Kappa, Value) { EXPECT_EQ(kappa(2, Q(3, 100)), Q(201, 100)); }

TEST(DensityBound, UnitQuadrupleLog) {
  // log x = e^{e^e} makes llll x = 1, so the bound is x^{1/c}/log x.
  const double log_x = std::exp(std::exp(std::exp(1.0)));
  double lb = log_density_bound(log_x, 2, 5, Q(21, 20), 0.01);
  EXPECT_NEAR(lb, log_x / 1.05 - std::log(log_x), 1e-9 * log_x);
  double lb1 = log_density_bound(log_x, 2, 5, Q(1), 0.01);
  EXPECT_NEAR(lb1, log_x - std::log(log_x), 1e-9 * log_x);
}

TEST(DensityBound, GuardAtDeskScale) {
  // llll(1e6) = log log log 13.8 < 0.
  EXPECT_PSLAB_ERROR(density_bound(1e6, 2, 5, Q(21, 20)), ErrorCode::bound_undefined);
  EXPECT_FALSE(quadruple_log(std::log(1e6)).has_value() && *quadruple_log(std::log(1e6)) > 0);
}

TEST(VPreset, LowDegreeMatchesHkl) {
  // For 4 <= d <= 11: v = (1+1/c)/2 * d(d+1)^2/(d(d+1)^2-1) - 1.
  Rational c = Q(101, 100);
  Rational big = Q(4 * 25, 4 * 25 - 1);
  Rational expect = Q(1, 2) * (1 + 1 / c) * big - 1;
  expect.canonicalize();
  EXPECT_EQ(v_preset(4, c), expect);
}

TEST(Table, RowsAndMidpoint) {
  auto rows = table(2, 4, 2);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].d, 2);
  EXPECT_EQ(rows[0].s, 5);
  EXPECT_EQ(rows[0].c_of_ds, Q(1, 54));
  EXPECT_EQ(rows[0].theta_at_midpoint, theta(2, 1 + Q(1, 108)));
  EXPECT_EQ(rows[3].d, 3);
}
