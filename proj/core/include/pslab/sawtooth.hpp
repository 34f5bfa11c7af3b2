#pragma once

#include <vector>

#include "pslab/ps_core.hpp"
#include "pslab/torus.hpp"

namespace pslab::expsum {

/// psi(t) = t - floor(t) - 1/2.
double psi(long double t);
/// psi(-(t+1)^{1/c}) - psi(-t^{1/c}).
double delta_psi(long double t, const PSExponent& c);

/// Vaaler's trigonometric approximation of psi with H-1 harmonics, and the
/// Fejer-kernel majorant of its error.
struct PsiApprox {
  int H = 0;
  std::vector<cplx> a;       // a[h-1] = a_h for h = 1..H; a_{-h} = conj(a_h)
  std::vector<double> b;     // b[|h|] = b_h for |h| < H; b_{-h} = b_h
  double C_a = 0;            // |a_h| <= C_a / |h|
  double C_b = 0;            // |b_h| <= C_b / H
};

PsiApprox vaaler_approx(int H);
double eval_psi_star(const PsiApprox& approx, long double t);
/// sum_{|h|<H} b_h e(ht), real and non-negative.
double eval_majorant(const PsiApprox& approx, long double t);

struct VaalerCheck {
  int H = 0;
  std::size_t grid = 0;
  double worst_excess = 0;  // max_t (|psi - psi*| - majorant); <= tol means the majorant holds
  bool majorant_holds = false;
  double sup_error = 0;     // max_t |psi - psi*|, 1/2 at the jump for every H
  double mean_error = 0;    // grid mean of |psi - psi*|
  double majorant_mean = 0; // grid mean of the majorant, b_0 = 1/2H
};

/// Evaluates on t = j / grid, j = 0..grid-1.
VaalerCheck vaaler_check(int H, std::size_t grid, double tol = 1e-12);

struct ABValues {
  u64 y = 0;
  u64 H = 0;
  double A = 0;
  double B = 0;
  double envelope = 0;  // y^{theta(d,c)/c}
};

/// H_y = max(1, floor(y^{1-1/c+v})).
u64 ab_H(u64 y, const PSExponent& c, double v);

/// A(y) = H^{-1} sum_{|h|<H} |sum_{m~y} e(h m^{1/c})| and
/// B(y) = y^{1/c-1} sum_{1<=|h|<=H} max_{y<y'<=2y} |sum_{y<m<=y'} e(m^d theta + h m^{1/c})|.
ABValues ab_decomposition(u64 y, u64 H, int d, const TorusPoint& theta, const PSExponent& c);

}  // namespace pslab::expsum
