#pragma once

#include <string>

#include "pslab/parallel.hpp"
#include "pslab/torus.hpp"
#include "pslab/weights.hpp"

namespace pslab::expsum {

struct RationalApprox {
  u64 a = 0;
  u64 q = 1;
  double error = 0;  // |alpha - a/q|
};

/// Last continued-fraction convergent of alpha with denominator <= Q, from the
/// exact binary value of alpha. Then q <= Q and |alpha - a/q| <= 1/(qQ).
/// a may equal q when alpha is within 1/(qQ) of 1.
RationalApprox dirichlet_approx(const TorusPoint& alpha, u64 Q);

enum class ArcThreshold {
  literal,       // x^{d - rho/2}
  w_normalized,  // N^{1 - rho/(2d)}, the same bound with x^d replaced by N
};
ArcThreshold parse_arc_threshold(const std::string& text);
std::string to_string(ArcThreshold t);

struct ArcLabel {
  bool major = false;
  u64 a = 0, q = 1;        // witness, 0 <= a < q, gcd(a, q) = 1
  double witness = 0;      // |mu^(alpha)|
  double threshold = 0;
  double envelope = 0;     // N L q^{-1/d} (1 + N |alpha - a/q|)^{-1/d}, L = log x
  double ratio = 0;        // witness / envelope
};

/// Q == 0 selects floor(sqrt N).
ArcLabel classify_arc(const TorusPoint& alpha, const SparseWeights& mu, u64 x, int d,
                      ArcThreshold mode = ArcThreshold::literal, u64 Q = 0, const Exec& exec = {});

/// sum_{q<=Q} sum_{a=0}^{q-1} q^{kappa eps - kappa/d} / (1 + N |sin(pi(alpha - a/q))|)^{kappa/d}.
double g2_kernel(double alpha, u64 Q, double N, int d, double kappa, double eps = 0);

}  // namespace pslab::expsum
