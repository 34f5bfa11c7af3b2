#pragma once

// Finite unions of subspaces of the hyperplane c.y = 0, each containing the
// diagonal. A subspace is {y : c.y = 0 and r.y = 0 for every constraint row r}.

#include <string>
#include <vector>

#include "pslab/rational.hpp"

namespace pslab::dioph {

struct Subspace {
  std::vector<std::vector<BigInt>> rows;  // integer constraint rows, cleared of denominators
};

class SubspaceUnion {
 public:
  SubspaceUnion() = default;
  SubspaceUnion(int s, std::vector<Subspace> parts) : s_(s), parts_(std::move(parts)) {}

  /// The diagonal line {y_1 = ... = y_s}.
  static SubspaceUnion diagonal(int s);
  /// Blocks of rows "q_1 ... q_s" (rationals allowed), blank-line separated.
  static SubspaceUnion parse(const std::string& text, int s);
  static SubspaceUnion load(const std::string& path, int s);
  std::string serialize() const;

  int s() const { return s_; }
  const std::vector<Subspace>& parts() const { return parts_; }

  /// Each subspace must contain the diagonal and be proper in the hyperplane;
  /// throws invalid-argument otherwise.
  void validate(const std::vector<i64>& coeffs) const;

  /// Dimension of subspace k inside the hyperplane c.y = 0.
  int dimension(std::size_t k, const std::vector<i64>& coeffs) const;

  bool contains(const std::vector<BigInt>& y) const;

 private:
  int s_ = 0;
  std::vector<Subspace> parts_;
};

/// Reduced row echelon form over Q; returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& m);

}  // namespace pslab::dioph
