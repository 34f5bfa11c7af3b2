#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab {

/// Sparse non-negative weight on [N], stored as parallel arrays sorted by index.
class SparseWeights {
 public:
  SparseWeights() = default;
  explicit SparseWeights(u64 N) : N_(N) {}

  /// Builds from unsorted (index, weight) pairs; duplicate indices add.
  static SparseWeights from_pairs(u64 N, std::vector<std::pair<u64, double>> pairs);

  u64 N() const { return N_; }
  std::size_t size() const { return index_.size(); }
  bool empty() const { return index_.empty(); }
  std::span<const u64> indices() const { return index_; }
  std::span<const double> values() const { return weight_; }

  /// Zero outside the support.
  double at(u64 n) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), n);
    if (it == index_.end() || *it != n) return 0.0;
    return weight_[static_cast<std::size_t>(it - index_.begin())];
  }
  bool contains(u64 n) const { return std::binary_search(index_.begin(), index_.end(), n); }

  double l1() const;
  double sum_pow(double s) const;

 private:
  u64 N_ = 0;
  std::vector<u64> index_;
  std::vector<double> weight_;
};

}  // namespace pslab
