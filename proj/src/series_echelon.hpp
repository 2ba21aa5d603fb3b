// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "branchdual/series.hpp"

namespace branchdual {
struct Staircase;
}

namespace branchdual::detail {

// Echelon set of series modulo t^(n+1), at most one element per leading order.
// Every stored element is monic at its leading order and has zero coefficient at
// every pivot that existed when it was inserted.
class SeriesEchelon {
 public:
  explicit SeriesEchelon(int n) : n_(n), by_pivot_(static_cast<std::size_t>(n) + 1) {}

  int trunc() const { return n_; }

  // Clears f at every current pivot position.
  void reduce(Series& f) const {
    for (int j = 0; j <= n_; ++j) {
      if (is_zero(f.coeff(j))) continue;
      const auto& b = by_pivot_[static_cast<std::size_t>(j)];
      if (b) f.add_scaled(-Rational(f.coeff(j)), *b);
    }
  }

  // Returns the new pivot, or nullopt when f reduces to zero.
  std::optional<int> insert(Series f) {
    if (f.trunc() != n_) f = f.with_trunc(n_);
    reduce(f);
    const auto lead = f.order();
    if (!lead) return std::nullopt;
    f *= 1 / Rational(f.coeff(*lead));
    by_pivot_[static_cast<std::size_t>(*lead)] = std::move(f);
    pivots_.push_back(*lead);
    return lead;
  }

  bool has_pivot(int j) const { return j >= 0 && j <= n_ && by_pivot_[static_cast<std::size_t>(j)].has_value(); }
  const Series& at(int pivot) const { return *by_pivot_[static_cast<std::size_t>(pivot)]; }
  // Insertion order.
  const std::vector<int>& pivots() const { return pivots_; }
  std::size_t size() const { return pivots_.size(); }

  // Makes every element zero at all other pivots.
  void fully_reduce() {
    std::vector<int> sorted;
    for (int j = 0; j <= n_; ++j)
      if (has_pivot(j)) sorted.push_back(j);
    for (auto q = sorted.rbegin(); q != sorted.rend(); ++q) {
      Series& b = *by_pivot_[static_cast<std::size_t>(*q)];
      for (int r : sorted) {
        if (r <= *q || is_zero(b.coeff(r))) continue;
        b.add_scaled(-Rational(b.coeff(r)), at(r));
      }
    }
  }

 private:
  int n_;
  std::vector<std::optional<Series>> by_pivot_;
  std::vector<int> pivots_;
};

// Staircase of the algebra whose span modulo t^(n+1) is held by echelon, given
// its conductor c <= n + 1 (every exponent in [c, n] must be a pivot).
Staircase staircase_from_echelon(const SeriesEchelon& echelon, int conductor);

}  // namespace branchdual::detail
