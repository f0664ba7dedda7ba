#pragma once

#include <string>
#include <vector>

#include "degenforge/sset.hpp"

namespace degenforge {

/// Partial degeneracy operators s_k : X_n -> X_{n+1} for 0 <= k <= n <= bound.
/// Entries not yet constructed hold kUnset.
class DegeneracyTable {
 public:
  DegeneracyTable() = default;
  /// All entries unset, for levels 0..bound of X (bound may be -1).
  DegeneracyTable(const SemisimplicialSet& X, int bound);

  /// Raw levels indexed [n][k][j]; shapes are checked by verify_simplicial.
  static DegeneracyTable from_levels(std::vector<std::vector<std::vector<Index>>> levels, std::string hash = {});

  int bound() const noexcept { return static_cast<int>(s_.size()) - 1; }

  /// kUnset when (k, n) lies outside the table or the entry is not set.
  Index get(int k, int n, Index j) const noexcept {
    if (n < 0 || n > bound() || k < 0 || k > n) return kUnset;
    const auto& row = s_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    return j < row.size() ? row[j] : kUnset;
  }
  Index operator()(int k, int n, Index j) const noexcept { return get(k, n, j); }

  void set(int k, int n, Index j, Index value) {
    s_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)][j] = value;
  }

  const std::vector<Index>& row(int k, int n) const {
    return s_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
  }
  std::vector<Index>& row(int k, int n) { return s_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]; }

  /// True when every entry of s_k on level n is set.
  bool complete(int k, int n) const;
  /// True when all s_k for k <= max_k are set on every level they apply to.
  bool complete_through(int max_k) const;

  /// Copy restricted to levels <= bound.
  DegeneracyTable truncated(int bound) const;

  /// Hash of the base set the table was built for (content_hash), may be empty.
  std::string base_hash;

  friend bool operator==(const DegeneracyTable& a, const DegeneracyTable& b) { return a.s_ == b.s_; }

 private:
  std::vector<std::vector<std::vector<Index>>> s_;  // [n][k][j]
};

}  // namespace degenforge
