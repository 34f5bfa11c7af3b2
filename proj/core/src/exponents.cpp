#include "pslab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pslab/error.hpp"

namespace pslab::exponents {
namespace {

void require_degree(int d) {
  require(d >= 2, ErrorCode::invalid_degree, "degree must be >= 2, got " + std::to_string(d));
}

void require_c(const Rational& c) {
  require(c >= 1 && c < 2, ErrorCode::out_of_domain, "c must lie in [1,2), got " + to_pq(c));
}

Rational min_of(const Rational& a, const Rational& b) { return a < b ? a : b; }

// The hkl factor that governs theta, c2 and c3: h on 4..11, k or l from 12 on.
Rational active_saving(int d) {
  HKL v = hkl(d);
  if (d <= 11) return v.h;
  return d % 2 == 0 ? v.k : v.l;
}

}  // namespace

DegreeParams degree_params(int d) {
  require_degree(d);
  DegreeParams p;
  p.d = d;
  p.S = 2 * ((d * d) / 2);
  p.s_bar = p.S + 1;
  return p;
}

HKL hkl(int d) {
  require(d >= 4, ErrorCode::out_of_domain, "h, k, l are defined for d >= 4");
  long dd = d;
  HKL v;
  v.h = make_rational(1, dd * (dd + 1) * (dd + 1) - 1);
  v.k = make_rational(2, 27 * dd * dd - 14);
  v.l = make_rational(2, 27 * dd * dd - 5);
  return v;
}

Rational theta(int d, const Rational& c) {
  require_degree(d);
  require_c(c);
  Rational out;
  if (d == 2) {
    out = (4 * c + 7) / 13;
  } else if (d == 3) {
    out = (15 * c + 14) / 30;
  } else {
    out = (1 + c) / 2 * (1 - active_saving(d));
  }
  out.canonicalize();
  return out;
}

CBounds c_bounds(int d) {
  require_degree(d);
  CBounds b;
  if (d == 2) {
    b.c1 = make_rational(7, 75);
    b.c2 = make_rational(1, 54);
    b.c3 = make_rational(1, 2);
    return b;
  }
  if (d == 3) {
    b.c1 = make_rational(3, 77);
    b.c2 = make_rational(1, 495);
    b.c3 = make_rational(1, 15);
    return b;
  }
  HKL v = hkl(d);
  b.c1 = min_of(v.h, d % 2 == 0 ? v.k : v.l);
  const int S = degree_params(d).S;
  const Rational t = active_saving(d);
  b.c2 = 2 * t / (4 * S + 1 - t);
  b.c3 = 2 * t / (1 - t);
  b.c2.canonicalize();
  b.c3.canonicalize();
  return b;
}

Rational c_of_display(int d, int s) {
  DegreeParams p = degree_params(d);
  require(s >= p.s_bar, ErrorCode::too_few_variables,
          "s = " + std::to_string(s) + " < s_bar(d) = " + std::to_string(p.s_bar));
  const long sb = p.s_bar;
  const long dl = d;
  const long sl = s;
  if (d == 2) return min_of(make_rational(1, 54), make_rational(1, 2 * sl - 1));
  if (d == 3) return min_of(make_rational(1, 495), make_rational(3, 8 * sl - 3));
  const Rational var_term = make_rational(dl, (sb - 1) * sl - dl);
  if (d <= 11) {
    BigInt den = BigInt(4 * sb - 3) * (dl * (dl + 1) * (dl + 1) - 1) - 1;
    Rational first(2, den);
    first.canonicalize();
    return min_of(first, var_term);
  }
  const long inner = d % 2 == 0 ? 3 * (3 * dl - 2) * (3 * dl + 2) - 2
                                 : 3 * (3 * dl - 1) * (3 * dl + 1) - 2;
  BigInt den = BigInt(4 * sb - 3) * inner - 2;
  Rational first(4, den);
  first.canonicalize();
  return min_of(first, var_term);
}

Rational c_of_min(int d, int s) {
  DegreeParams p = degree_params(d);
  require(s >= p.s_bar, ErrorCode::too_few_variables,
          "s = " + std::to_string(s) + " < s_bar(d) = " + std::to_string(p.s_bar));
  Rational var_term = make_rational(d, static_cast<long>(s) * p.S - d);
  return min_of(c_bounds(d).c2, var_term);
}

Rational c_of(int d, int s) {
  Rational a = c_of_display(d, s);
  Rational b = c_of_min(d, s);
  require(a == b, ErrorCode::out_of_domain,
          "closed form and min form of c(d,s) disagree: " + to_pq(a) + " vs " + to_pq(b));
  return a;
}

EtaResult eta(int d, int s, const Rational& c, const Rational& eps) {
  DegreeParams p = degree_params(d);
  require(s >= p.s_bar, ErrorCode::too_few_variables,
          "s = " + std::to_string(s) + " < s_bar(d) = " + std::to_string(p.s_bar));
  require(c >= 1, ErrorCode::out_of_domain, "c must be >= 1");
  EtaResult r;
  r.margin = (d * c - s * (c - 1) * p.S) / (d * c * (s - 1));
  r.margin.canonicalize();
  r.eta = r.margin - eps;
  r.eta.canonicalize();
  r.admissible = r.margin > 0;
  return r;
}

Rational eta_checked(int d, int s, const Rational& c, const Rational& eps) {
  EtaResult r = eta(d, s, c, eps);
  require(r.admissible, ErrorCode::inadmissible_c,
          "eta(eps=0) = " + to_pq(r.margin) + " <= 0 at c = " + to_pq(c));
  return r.eta;
}

Rational eta_c_limit(int d, int s) {
  DegreeParams p = degree_params(d);
  return 1 + make_rational(d, static_cast<long>(s) * p.S - d);
}

Rational rho(int d) {
  require_degree(d);
  if (d <= 8) return Rational(1, BigInt(1) << (d - 1));
  long dl = d;
  return make_rational(1, 4 * (dl * dl - 3 * dl + 3));
}

D0V0 d0_v0(int d) {
  require(d >= 12, ErrorCode::out_of_domain, "d0 and v0 are defined for d >= 12");
  D0V0 out;
  out.d0 = d % 2 == 0 ? 3 * d / 2 : (3 * d - 1) / 2;
  long d0 = out.d0;
  out.v0 = make_rational(d0 - d, d0 * (d0 * d0 - 1));
  return out;
}

UThreshold u_threshold(int d, const Rational& c) {
  const int S = degree_params(d).S;
  require(c >= 1, ErrorCode::out_of_domain, "c must be >= 1");
  Rational th = theta(d, c);
  require(th < 1, ErrorCode::inadmissible_c, "theta(d,c) = " + to_pq(th) + " >= 1");
  UThreshold u;
  u.excess = 2 * S * (c - 1) / (1 - th);
  u.excess.canonicalize();
  u.threshold = S * (1 + 2 * (c - 1) / (1 - th));
  u.threshold.canonicalize();
  return u;
}

Rational kappa(int d, const Rational& eps1) {
  Rational k = d + eps1 / 3;
  k.canonicalize();
  return k;
}

Rational v_preset(int d, const Rational& c) {
  require_degree(d);
  require_c(c);
  Rational v;
  if (d <= 11) {
    long dl = d;
    BigInt big_d = BigInt(dl * (dl + 1) * (dl + 1));
    v = Rational(1, 2) * (1 + 1 / c) * Rational(big_d, big_d - 1) - 1;
  } else {
    Rational v0 = d0_v0(d).v0;
    v = (1 / c - 1 + v0) / (2 - v0);
  }
  v.canonicalize();
  return v;
}

std::optional<double> quadruple_log(double log_x) {
  double v = log_x;
  for (int i = 0; i < 3; ++i) {
    if (!(v > 0)) return std::nullopt;
    v = std::log(v);
  }
  return v;
}

double log_density_bound(double log_x, int d, int s, const Rational& c, double eps) {
  auto llll = quadruple_log(log_x);
  require(llll.has_value() && *llll > 0, ErrorCode::bound_undefined,
          "log log log log x <= 0 at log x = " + std::to_string(log_x) + "; use trend mode");
  const double cd = to_double(c);
  const double exponent = (2.0 - s) / (d * cd) + eps;
  return log_x / cd - std::log(log_x) + exponent * std::log(*llll);
}

double density_bound(double x, int d, int s, const Rational& c, double eps) {
  require(x > 1, ErrorCode::bound_undefined, "x must exceed 1");
  return std::exp(log_density_bound(std::log(x), d, s, c, eps));
}

ExponentProfile profile(int d, const Rational& c, const Rational& eps1) {
  ExponentProfile p;
  p.d = d;
  p.c = c;
  if (d >= 4) p.hkl = hkl(d);
  p.bounds = c_bounds(d);
  p.theta = theta(d, c);
  p.rho = rho(d);
  if (d >= 12) p.d0v0 = d0_v0(d);
  p.u = u_threshold(d, c);
  p.kappa = kappa(d, eps1);
  return p;
}

std::vector<TableRow> table(int d_min, int d_max, int s_extra) {
  require_degree(d_min);
  require(d_max >= d_min, ErrorCode::invalid_argument, "d_max < d_min");
  require(s_extra >= 0, ErrorCode::invalid_argument, "s_extra must be >= 0");
  std::vector<TableRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    DegreeParams dp = degree_params(d);
    for (int s = dp.s_bar; s <= dp.s_bar + s_extra; ++s) {
      TableRow r;
      r.d = d;
      r.s = s;
      r.degree = dp;
      if (d >= 4) r.hkl = hkl(d);
      r.bounds = c_bounds(d);
      r.c_of_ds = c_of(d, s);
      r.theta_at_midpoint = theta(d, 1 + r.c_of_ds / 2);
      r.rho = rho(d);
      if (d >= 12) r.d0v0 = d0_v0(d);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace pslab::exponents
