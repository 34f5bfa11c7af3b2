#pragma once

#include "pslab/parallel.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/torus.hpp"
#include "pslab/weights.hpp"

namespace pslab::expsum {

/// sum_{n <= x} e(alpha n^d).
cplx weyl_sum(u64 x, int d, const TorusPoint& alpha, const Exec& exec = {});

/// sum_{m in N^c_x} c m^{d-1/c} e(m^d theta).
cplx ps_weighted_sum(u64 x, const PSExponent& c, int d, const TorusPoint& theta, const Exec& exec = {});

/// sum_{m <= x} m^{d-1} e(m^d theta).
cplx smooth_weighted_sum(u64 x, int d, const TorusPoint& theta, const Exec& exec = {});

struct Discrepancy {
  cplx ps, smooth;
  double value = 0;          // |ps - smooth|
  double envelope_exp = 0;   // d - (1 - theta(d,c))/c
  double envelope = 0;       // x^{envelope_exp}
  double ratio = 0;
  bool admissible = true;    // c < 1 + c3(d)
};

Discrepancy discrepancy(u64 x, const PSExponent& c, int d, const TorusPoint& theta, const Exec& exec = {});

/// f^(alpha) = sum_n f(n) e(alpha n), by direct summation.
cplx weight_transform(const SparseWeights& f, const TorusPoint& alpha, const Exec& exec = {});

}  // namespace pslab::expsum
