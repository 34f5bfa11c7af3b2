#pragma once

// Exact exponent calculus for the Piatetski-Shapiro d-th power problem.
//
// Everything here is a pure function of (d, s, c, eps) in exact rational
// arithmetic. Floating point appears only in density_bound, which evaluates
// the final density bound for reporting.

#include <optional>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab::exponents {

struct DegreeParams {
  int d = 0;
  int S = 0;      // 2*floor(d^2/2): moment admissible for the Weyl-sum mean value
  int s_bar = 0;  // S + 1: minimal number of variables
};

struct HKL {
  Rational h, k, l;
};

struct CBounds {
  Rational c1;  // Fourier-decay radius
  Rational c2;  // restriction radius
  Rational c3;  // PS-sum vs smooth-sum radius
};

struct EtaResult {
  Rational eta;     // value including -eps
  Rational margin;  // value at eps = 0; positive iff c is admissible
  bool admissible = false;
};

struct D0V0 {
  int d0 = 0;
  Rational v0;
};

struct UThreshold {
  Rational threshold;  // S(1 + 2(c-1)/(1-theta))
  Rational excess;     // 2S(c-1)/(1-theta), must lie in (0,1)
};

/// Everything about one (d, c) pair that the lab reports.
struct ExponentProfile {
  int d = 0;
  Rational c;
  std::optional<HKL> hkl;  // defined for d >= 4
  CBounds bounds;
  Rational theta;
  Rational rho;
  std::optional<D0V0> d0v0;  // defined for d >= 12
  UThreshold u;
  Rational kappa;  // d + eps1/3
};

DegreeParams degree_params(int d);

/// h = 1/(d(d+1)^2-1), k = 2/(27d^2-14), l = 2/(27d^2-5); d >= 4.
HKL hkl(int d);

/// theta(d,c): the Weyl-sum saving exponent.
Rational theta(int d, const Rational& c);

CBounds c_bounds(int d);

/// Admissible radius c(d,s), from the three-case closed form.
Rational c_of_display(int d, int s);
/// Admissible radius c(d,s) = min{c2(d), d/(sS-d)}.
Rational c_of_min(int d, int s);
/// Both routes; throws out-of-domain on disagreement (never expected).
Rational c_of(int d, int s);

/// eta = (dc - s(c-1)S)/(dc(s-1)) - eps; the K-trivial saving exponent.
EtaResult eta(int d, int s, const Rational& c, const Rational& eps);
/// Throws inadmissible-c when eta(eps=0) <= 0.
Rational eta_checked(int d, int s, const Rational& c, const Rational& eps);
/// Upper end of the c-range where eta > 0: 1 + d/(sS - d).
Rational eta_c_limit(int d, int s);

Rational rho(int d);

D0V0 d0_v0(int d);

UThreshold u_threshold(int d, const Rational& c);

/// kappa = d + eps1/3, the Hoelder exponent of the large-values argument.
Rational kappa(int d, const Rational& eps1);

/// Preset v for H_y = y^{1-1/c+v}: the d <= 11 formula (also used for d = 2, 3)
/// or the d >= 12 formula built from v0.
Rational v_preset(int d, const Rational& c);

/// Natural log of x^{1/c}/log x * (log log log log x)^{(2-s)/(dc)+eps},
/// given log x. Throws bound-undefined when the quadruple log is <= 0.
double log_density_bound(double log_x, int d, int s, const Rational& c, double eps = 0.01);
double density_bound(double x, int d, int s, const Rational& c, double eps = 0.01);
/// log log log log x from log x, or nullopt if any stage is undefined.
std::optional<double> quadruple_log(double log_x);

ExponentProfile profile(int d, const Rational& c, const Rational& eps1 = Rational(1, 100));

/// One row of the exponent table.
struct TableRow {
  int d = 0, s = 0;
  DegreeParams degree;
  std::optional<HKL> hkl;
  CBounds bounds;
  Rational theta_at_midpoint;  // theta(d, 1 + c(d,s)/2)
  Rational c_of_ds;
  Rational rho;
  std::optional<D0V0> d0v0;
};

std::vector<TableRow> table(int d_min, int d_max, int s_extra = 0);

}  // namespace pslab::exponents
