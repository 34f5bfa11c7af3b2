#include "pslab/weights.hpp"

#include <cmath>
#include <numeric>

#include "pslab/error.hpp"

namespace pslab {

SparseWeights SparseWeights::from_pairs(u64 N, std::vector<std::pair<u64, double>> pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseWeights w(N);
  w.index_.reserve(pairs.size());
  w.weight_.reserve(pairs.size());
  for (const auto& [n, v] : pairs) {
    require(n >= 1 && n <= N, ErrorCode::out_of_domain,
            "weight index " + std::to_string(n) + " outside [1, " + std::to_string(N) + "]");
    require(v >= 0 && std::isfinite(v), ErrorCode::invalid_argument, "weights must be finite and non-negative");
    if (!w.index_.empty() && w.index_.back() == n)
      w.weight_.back() += v;
    else {
      w.index_.push_back(n);
      w.weight_.push_back(v);
    }
  }
  return w;
}

double SparseWeights::l1() const { return std::accumulate(weight_.begin(), weight_.end(), 0.0); }

double SparseWeights::sum_pow(double s) const {
  double total = 0;
  for (double v : weight_) total += std::pow(v, s);
  return total;
}

}  // namespace pslab
