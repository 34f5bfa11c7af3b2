#pragma once

#include "pslab/parallel.hpp"
#include "pslab/rational.hpp"

namespace pslab::expsum {

/// #{m in [x]^S : m_1^d + ... + m_{S/2}^d = m_{S/2+1}^d + ... + m_S^d}, as the
/// sum of squared multiplicities of the (S/2)-fold d-th power sums.
BigInt mean_value_count(u64 x, int d, int S, const Exec& exec = {});

/// Entries of the dense histogram route; larger ranges sort a key table.
inline constexpr u64 kMeanValueDenseLimit = 300'000'000;

struct QuadratureCheck {
  u64 M = 0;
  double quadrature = 0;  // (1/M) sum_j |sum_{n<=x} e(j n^d / M)|^S
  BigInt count;
  double rel_error = 0;
};

/// Needs M > S x^d (aliasing-error otherwise).
QuadratureCheck quadrature_vs_count(u64 x, int d, int S, u64 M, const Exec& exec = {});

}  // namespace pslab::expsum
