#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "ctforge/checked.hpp"
#include "ctforge/errors.hpp"

namespace ctforge {

/// Index of a variable x_0, x_1, ... Series are expanded first in x_0, then
/// x_1, and so on; the order is the index order and never changes.
using VarIndex = int;

/// Monomial x_{i1}^{e1} x_{i2}^{e2} ... kept as (index, exponent) pairs sorted
/// by index with no zero exponents. The empty vector is the monomial 1.
class ExpVec {
 public:
  using Entry = std::pair<VarIndex, int>;

  ExpVec() = default;

  ExpVec(std::initializer_list<Entry> entries) {
    for (const auto& [v, e] : entries) *this = *this * var(v, e);
  }

  static ExpVec var(VarIndex v, int e = 1) {
    if (v < 0) throw ShapeError("ExpVec: negative variable index");
    ExpVec out;
    if (e != 0) out.entries_.emplace_back(v, e);
    return out;
  }

  /// x_i / x_j
  static ExpVec ratio(VarIndex i, VarIndex j) { return var(i) * var(j, -1); }

  bool is_one() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  int exponent(VarIndex v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const Entry& e, VarIndex x) { return e.first < x; });
    return (it != entries_.end() && it->first == v) ? it->second : 0;
  }

  /// Largest variable index present, or -1 for the monomial 1.
  VarIndex max_var() const noexcept {
    return entries_.empty() ? -1 : entries_.back().first;
  }

  friend ExpVec operator*(const ExpVec& a, const ExpVec& b) {
    ExpVec out;
    out.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
        out.entries_.push_back(*ia++);
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        out.entries_.push_back(*ib++);
      } else {
        int e = checked_add(ia->second, ib->second);
        if (e != 0) out.entries_.emplace_back(ia->first, e);
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  ExpVec inverse() const {
    ExpVec out(*this);
    for (auto& [v, e] : out.entries_) e = checked_sub(0, e);
    return out;
  }

  ExpVec pow(int k) const {
    if (k == 0) return {};
    ExpVec out(*this);
    for (auto& [v, e] : out.entries_) e = checked_mul(e, k);
    return out;
  }

  /// This monomial with variable v removed.
  ExpVec without(VarIndex v) const {
    ExpVec out;
    for (const auto& entry : entries_) {
      if (entry.first != v) out.entries_.push_back(entry);
    }
    return out;
  }

  friend bool operator==(const ExpVec&, const ExpVec&) = default;
  friend auto operator<=>(const ExpVec& a, const ExpVec& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

}  // namespace ctforge
