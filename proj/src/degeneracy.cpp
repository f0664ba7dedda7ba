#include "degenforge/degeneracy.hpp"

#include <algorithm>

#include "degenforge/error.hpp"

namespace degenforge {

DegeneracyTable::DegeneracyTable(const SemisimplicialSet& X, int bound) {
  if (bound >= X.dim()) throw Error(Errc::InvalidInput, "degeneracies of level D would land above the truncation");
  base_hash = content_hash(X);
  if (bound < 0) return;
  s_.resize(static_cast<std::size_t>(bound + 1));
  for (int n = 0; n <= bound; ++n) s_[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1),
                                                                          std::vector<Index>(X.count(n), kUnset));
}

DegeneracyTable DegeneracyTable::from_levels(std::vector<std::vector<std::vector<Index>>> levels,
                                             std::string hash) {
  DegeneracyTable out;
  for (std::size_t n = 0; n < levels.size(); ++n)
    if (levels[n].size() != n + 1) throw Error(Errc::InvalidInput, "level " + std::to_string(n) + " needs s_0..s_n");
  out.s_ = std::move(levels);
  out.base_hash = std::move(hash);
  return out;
}

bool DegeneracyTable::complete(int k, int n) const {
  if (n < 0 || n > bound() || k < 0 || k > n) return false;
  const auto& r = row(k, n);
  return std::find(r.begin(), r.end(), kUnset) == r.end();
}

bool DegeneracyTable::complete_through(int max_k) const {
  for (int n = 0; n <= bound(); ++n)
    for (int k = 0; k <= std::min(n, max_k); ++k)
      if (!complete(k, n)) return false;
  return true;
}

DegeneracyTable DegeneracyTable::truncated(int new_bound) const {
  DegeneracyTable out;
  out.base_hash = base_hash;
  const int b = std::min(new_bound, bound());
  if (b >= 0) out.s_.assign(s_.begin(), s_.begin() + b + 1);
  return out;
}

}  // namespace degenforge
