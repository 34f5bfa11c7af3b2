#pragma once

// Meet-in-the-middle over a linear form: find index tuples (j_1..j_s) with
// sum_i terms[i][j_i] == 0, where terms[i] lists the values coordinate i may
// contribute (coefficient already applied).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "pslab/error.hpp"
#include "pslab/parallel.hpp"
#include "pslab/rational.hpp"

namespace pslab::dioph {

inline constexpr std::size_t kDefaultTableBudget = 50'000'000;

template <class Key>
class Mitm {
 public:
  /// `weight[i]` orders coordinates for the split: of the k coordinates with
  /// more than one value, the ceil(k/2) heaviest are tabulated.
  Mitm(std::vector<std::vector<Key>> terms, const std::vector<double>& weight,
       std::size_t table_budget = kDefaultTableBudget)
      : terms_(std::move(terms)) {
    const std::size_t s = terms_.size();
    for (const auto& t : terms_)
      if (t.empty()) empty_ = true;
    std::vector<std::size_t> order(s);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const bool sa = terms_[a].size() <= 1, sb = terms_[b].size() <= 1;
      if (sa != sb) return !sa;
      return weight[a] > weight[b];
    });
    std::size_t wide = 0;
    for (const auto& t : terms_) wide += t.size() > 1;
    const std::size_t want = (wide + 1) / 2;
    for (std::size_t k = 0; k < s; ++k) {
      const std::size_t i = order[k];
      if (table_.size() < want && terms_[i].size() > 1)
        table_.push_back(i);
      else
        probe_.push_back(i);
    }
    std::sort(table_.begin(), table_.end());
    std::sort(probe_.begin(), probe_.end());
    if (empty_) return;
    long double entries = 1;
    for (std::size_t i : table_) entries *= terms_[i].size();
    require(entries <= static_cast<long double>(table_budget), ErrorCode::split_refused,
            "meet-in-the-middle table of " + std::to_string(static_cast<double>(entries)) +
                " entries exceeds the budget of " + std::to_string(table_budget));
    build();
  }

  std::size_t probe_count() const {
    if (empty_) return 0;
    std::size_t n = 1;
    for (std::size_t i : probe_) n *= terms_[i].size();
    return n;
  }
  std::size_t table_size() const { return rows_.size(); }

  u128 count(const Exec& exec = {}) const {
    const std::size_t n = probe_count();
    std::vector<u128> parts(chunk_count(n, exec), 0);
    parallel_chunks(n, exec, [&](std::size_t w, std::size_t lo, std::size_t hi) {
      u128 acc = 0;
      std::vector<std::size_t> idx(terms_.size());
      for (std::size_t r = lo; r < hi; ++r) {
        const Key target = -probe_sum(r, idx);
        auto [a, b] = std::equal_range(rows_.begin(), rows_.end(), std::make_pair(target, std::size_t{0}), key_less);
        acc += static_cast<u128>(b - a);
      }
      parts[w] = acc;
    });
    u128 total = 0;
    for (u128 p : parts) total += p;
    return total;
  }

  /// visit(const std::vector<std::size_t>& indices) -> bool (false stops).
  /// Probe ranks in [lo, hi), each with its matches in table order.
  template <class Visit>
  bool visit_range(std::size_t lo, std::size_t hi, Visit&& visit) const {
    std::vector<std::size_t> idx(terms_.size());
    for (std::size_t r = lo; r < hi; ++r) {
      const Key target = -probe_sum(r, idx);
      auto [a, b] = std::equal_range(rows_.begin(), rows_.end(), std::make_pair(target, std::size_t{0}), key_less);
      for (auto it = a; it != b; ++it) {
        unrank(table_, it->second, idx);
        if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return false;
      }
    }
    return true;
  }

  template <class Visit>
  bool visit(Visit&& v) const {
    return visit_range(0, probe_count(), std::forward<Visit>(v));
  }

 private:
  static bool key_less(const std::pair<Key, std::size_t>& a, const std::pair<Key, std::size_t>& b) {
    return a.first < b.first;
  }

  void unrank(const std::vector<std::size_t>& coords, std::size_t rank, std::vector<std::size_t>& idx) const {
    for (auto it = coords.rbegin(); it != coords.rend(); ++it) {
      const std::size_t sz = terms_[*it].size();
      idx[*it] = rank % sz;
      rank /= sz;
    }
  }

  Key probe_sum(std::size_t rank, std::vector<std::size_t>& idx) const {
    unrank(probe_, rank, idx);
    Key s = 0;
    for (std::size_t i : probe_) s += terms_[i][idx[i]];
    return s;
  }

  void build() {
    std::size_t n = 1;
    for (std::size_t i : table_) n *= terms_[i].size();
    rows_.reserve(n);
    std::vector<std::size_t> idx(terms_.size());
    for (std::size_t r = 0; r < n; ++r) {
      unrank(table_, r, idx);
      Key s = 0;
      for (std::size_t i : table_) s += terms_[i][idx[i]];
      rows_.emplace_back(std::move(s), r);
    }
    std::sort(rows_.begin(), rows_.end());
  }

  std::vector<std::vector<Key>> terms_;
  std::vector<std::size_t> table_, probe_;
  std::vector<std::pair<Key, std::size_t>> rows_;
  bool empty_ = false;
};

}  // namespace pslab::dioph
