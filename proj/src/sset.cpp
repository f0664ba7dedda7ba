#include "degenforge/sset.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "degenforge/error.hpp"

namespace degenforge {

namespace {

std::size_t as_size(int n) { return static_cast<std::size_t>(n); }

}  // namespace

SemisimplicialSet::SemisimplicialSet() : cells_{0}, faces_(1) { build_cofaces(); }

SemisimplicialSet::SemisimplicialSet(std::vector<std::size_t> cells, std::vector<std::vector<Index>> faces)
    : cells_(std::move(cells)), faces_(std::move(faces)) {
  if (cells_.empty()) throw Error(Errc::InvalidInput, "a semisimplicial set needs at least dimension 0");
  if (faces_.size() != cells_.size())
    throw Error(Errc::InvalidInput, "face table must have one entry per dimension 0..D");
  if (!faces_[0].empty()) throw Error(Errc::InvalidInput, "vertices have no faces");
  for (std::size_t n = 1; n < cells_.size(); ++n) {
    if (faces_[n].size() != cells_[n] * (n + 1))
      throw Error(Errc::InvalidInput, "face table of dimension " + std::to_string(n) + " has " +
                                          std::to_string(faces_[n].size()) + " entries, expected " +
                                          std::to_string(cells_[n] * (n + 1)));
  }
  build_cofaces();
}

void SemisimplicialSet::build_cofaces() {
  cofaces_.assign(cells_.size(), {});
  for (std::size_t n = 1; n < cells_.size(); ++n) {
    const std::size_t below = cells_[n - 1];
    cofaces_[n].resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      CofaceIndex& idx = cofaces_[n][i];
      idx.offsets.assign(below + 1, 0);
      for (std::size_t j = 0; j < cells_[n]; ++j) {
        const Index f = faces_[n][j * (n + 1) + i];
        if (f < below) ++idx.offsets[f + 1];
      }
      for (std::size_t f = 0; f < below; ++f) idx.offsets[f + 1] += idx.offsets[f];
      idx.items.resize(idx.offsets[below]);
      std::vector<std::uint32_t> fill(idx.offsets.begin(), idx.offsets.end() - 1);
      for (std::size_t j = 0; j < cells_[n]; ++j) {
        const Index f = faces_[n][j * (n + 1) + i];
        if (f < below) idx.items[fill[f]++] = static_cast<Index>(j);
      }
    }
  }
}

std::span<const Index> SemisimplicialSet::cofaces(int n, int i, Index face) const noexcept {
  if (n < 1 || n > dim() || i < 0 || i > n) return {};
  const CofaceIndex& idx = cofaces_[as_size(n)][as_size(i)];
  if (face >= cells_[as_size(n - 1)]) return {};
  return {idx.items.data() + idx.offsets[face], idx.offsets[face + 1] - idx.offsets[face]};
}

SemisimplicialSet SemisimplicialSet::truncated(int D) const {
  if (D < 0 || D > dim()) throw Error(Errc::InvalidInput, "truncation above the stored dimension");
  std::vector<std::size_t> cells(cells_.begin(), cells_.begin() + D + 1);
  std::vector<std::vector<Index>> faces(faces_.begin(), faces_.begin() + D + 1);
  return {std::move(cells), std::move(faces)};
}

std::string content_hash(const SemisimplicialSet& X) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(X.dim()));
  for (std::size_t c : X.cells()) mix(c);
  for (int n = 1; n <= X.dim(); ++n)
    for (Index f : X.face_table(n)) mix(f);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ValidationReport validate(const SemisimplicialSet& X) {
  ValidationReport report;
  std::vector<bool> level_in_range(as_size(X.dim() + 1), true);
  for (int n = 1; n <= X.dim(); ++n) {
    for (Index j = 0; j < X.count(n); ++j)
      for (int i = 0; i <= n; ++i)
        if (X.face(n, j, i) >= X.count(n - 1)) {
          report.violations.push_back({FaceViolation::Kind::OutOfRange, n, j, i, 0});
          level_in_range[as_size(n)] = false;
        }
  }
  for (int n = 2; n <= X.dim(); ++n) {
    if (!level_in_range[as_size(n)] || !level_in_range[as_size(n - 1)]) continue;
    for (Index j = 0; j < X.count(n); ++j)
      for (int k = 1; k <= n; ++k)
        for (int i = 0; i < k; ++i) {
          ++report.checked;
          const Index lhs = X.face(n - 1, X.face(n, j, k), i);
          const Index rhs = X.face(n - 1, X.face(n, j, i), k - 1);
          if (lhs != rhs) report.violations.push_back({FaceViolation::Kind::Identity, n, j, i, k});
        }
  }
  return report;
}

SimplexRef last_edge(const SemisimplicialSet& X, SimplexRef s) {
  if (s.dim < 1) throw Error(Errc::DimensionTooLow, "a vertex has no last edge");
  while (s.dim > 1) s = X.face(s, 0);
  return s;
}

SimplexRef first_edge(const SemisimplicialSet& X, SimplexRef s) {
  if (s.dim < 1) throw Error(Errc::DimensionTooLow, "a vertex has no first edge");
  while (s.dim > 1) s = X.face(s, s.dim);
  return s;
}

MapReport validate_map(const SemisimplicialMap& F) {
  MapReport report;
  const SemisimplicialSet& X = *F.source;
  const SemisimplicialSet& Y = *F.target;
  const int top = std::min({F.dim(), X.dim(), Y.dim()});
  std::vector<bool> level_ok(as_size(top + 1), true);
  for (int n = 0; n <= top; ++n) {
    const auto& level = F.levels[as_size(n)];
    if (level.size() != X.count(n)) {
      report.violations.push_back({n, 0, -1});
      level_ok[as_size(n)] = false;
      continue;
    }
    for (Index j = 0; j < level.size(); ++j)
      if (level[j] >= Y.count(n)) {
        report.violations.push_back({n, j, -1});
        level_ok[as_size(n)] = false;
      }
  }
  for (int n = 1; n <= top; ++n) {
    if (!level_ok[as_size(n)] || !level_ok[as_size(n - 1)]) continue;
    for (Index j = 0; j < X.count(n); ++j)
      for (int i = 0; i <= n; ++i) {
        ++report.checked;
        if (F(n - 1, X.face(n, j, i)) != Y.face(n, F(n, j), i)) report.violations.push_back({n, j, i});
      }
  }
  return report;
}

SemisimplicialMap identity_map(const SSetPtr& X) {
  SemisimplicialMap F{X, X, {}};
  for (int n = 0; n <= X->dim(); ++n) {
    std::vector<Index> level(X->count(n));
    for (Index j = 0; j < level.size(); ++j) level[j] = j;
    F.levels.push_back(std::move(level));
  }
  return F;
}

SemisimplicialMap terminal_map(const SSetPtr& X) {
  SemisimplicialMap F{X, share(terminal_set(X->dim())), {}};
  for (int n = 0; n <= X->dim(); ++n) F.levels.emplace_back(X->count(n), 0);
  return F;
}

Subcomplex::Subcomplex(SSetPtr ambient, std::vector<std::vector<Index>> members)
    : ambient_(std::move(ambient)), members_(std::move(members)) {
  const int D = ambient_->dim();
  if (static_cast<int>(members_.size()) > D + 1)
    throw Error(Errc::InvalidInput, "subcomplex lists dimensions above the ambient truncation");
  members_.resize(as_size(D + 1));
  local_.resize(as_size(D + 1));
  for (int n = 0; n <= D; ++n) {
    auto& m = members_[as_size(n)];
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    local_[as_size(n)].assign(ambient_->count(n), kUnset);
    for (Index l = 0; l < m.size(); ++l) {
      if (m[l] >= ambient_->count(n))
        throw Error(Errc::InvalidInput, "subcomplex member out of range", ErrorSite{n, m[l]});
      local_[as_size(n)][m[l]] = l;
    }
  }
}

bool Subcomplex::contains(int n, Index j) const noexcept {
  return n >= 0 && n < static_cast<int>(local_.size()) && j < local_[as_size(n)].size() &&
         local_[as_size(n)][j] != kUnset;
}

std::optional<Index> Subcomplex::local_index(int n, Index j) const noexcept {
  if (!contains(n, j)) return std::nullopt;
  return local_[as_size(n)][j];
}

std::optional<SimplexRef> Subcomplex::first_unclosed() const {
  for (int n = 1; n < static_cast<int>(members_.size()); ++n)
    for (Index j : members_[as_size(n)])
      for (int i = 0; i <= n; ++i)
        if (!contains(n - 1, ambient_->face(n, j, i))) return SimplexRef{n, j};
  return std::nullopt;
}

SSetPtr Subcomplex::induced() const {
  if (auto bad = first_unclosed())
    throw Error(Errc::InvalidInput, "subcomplex is not closed under faces", ErrorSite{bad->dim, bad->index});
  std::vector<std::size_t> cells;
  std::vector<std::vector<Index>> faces(members_.size());
  for (int n = 0; n < static_cast<int>(members_.size()); ++n) {
    cells.push_back(members_[as_size(n)].size());
    if (n == 0) continue;
    for (Index j : members_[as_size(n)])
      for (int i = 0; i <= n; ++i) faces[as_size(n)].push_back(local_[as_size(n - 1)][ambient_->face(n, j, i)]);
  }
  return share(SemisimplicialSet(std::move(cells), std::move(faces)));
}

SemisimplicialMap Subcomplex::inclusion() const { return {induced(), ambient_, members_}; }

ProductSet product(const SSetPtr& X, const SSetPtr& Y) {
  const int D = std::min(X->dim(), Y->dim());
  ProductSet out;
  std::vector<std::size_t> cells;
  std::vector<std::vector<Index>> faces(as_size(D + 1));
  for (int n = 0; n <= D; ++n) {
    const std::size_t cx = X->count(n), cy = Y->count(n);
    cells.push_back(cx * cy);
    out.right_counts.push_back(cy);
    if (n == 0) continue;
    const std::size_t cy_below = Y->count(n - 1);
    auto& level = faces[as_size(n)];
    level.reserve(cx * cy * as_size(n + 1));
    for (Index a = 0; a < cx; ++a)
      for (Index b = 0; b < cy; ++b)
        for (int i = 0; i <= n; ++i)
          level.push_back(static_cast<Index>(X->face(n, a, i) * cy_below + Y->face(n, b, i)));
  }
  out.set = share(SemisimplicialSet(std::move(cells), std::move(faces)));
  out.first = {out.set, X, {}};
  out.second = {out.set, Y, {}};
  for (int n = 0; n <= D; ++n) {
    const std::size_t cx = X->count(n), cy = Y->count(n);
    std::vector<Index> left(cx * cy), right(cx * cy);
    for (Index a = 0; a < cx; ++a)
      for (Index b = 0; b < cy; ++b) {
        left[a * cy + b] = a;
        right[a * cy + b] = b;
      }
    out.first.levels.push_back(std::move(left));
    out.second.levels.push_back(std::move(right));
  }
  return out;
}

SemisimplicialSet terminal_set(int D) {
  std::vector<std::size_t> cells(as_size(D + 1), 1);
  std::vector<std::vector<Index>> faces(as_size(D + 1));
  for (int n = 1; n <= D; ++n) faces[as_size(n)].assign(as_size(n + 1), 0);
  return {std::move(cells), std::move(faces)};
}

SemisimplicialSet empty_set(int D) {
  return {std::vector<std::size_t>(as_size(D + 1), 0), std::vector<std::vector<Index>>(as_size(D + 1))};
}

SemisimplicialSet standard_simplex(int n, int D) {
  std::vector<std::vector<std::vector<int>>> simplices(as_size(D + 1));
  std::vector<std::map<std::vector<int>, Index>> lookup(as_size(D + 1));
  for (int m = 0; m <= D; ++m) {
    if (m > n) continue;
    // (m+1)-subsets of {0..n} in lexicographic order
    std::vector<int> cur(as_size(m + 1));
    for (int t = 0; t <= m; ++t) cur[as_size(t)] = t;
    while (true) {
      lookup[as_size(m)][cur] = static_cast<Index>(simplices[as_size(m)].size());
      simplices[as_size(m)].push_back(cur);
      int t = m;
      while (t >= 0 && cur[as_size(t)] == n - m + t) --t;
      if (t < 0) break;
      ++cur[as_size(t)];
      for (int u = t + 1; u <= m; ++u) cur[as_size(u)] = cur[as_size(u - 1)] + 1;
    }
  }
  std::vector<std::size_t> cells;
  std::vector<std::vector<Index>> faces(as_size(D + 1));
  for (int m = 0; m <= D; ++m) {
    cells.push_back(simplices[as_size(m)].size());
    if (m == 0) continue;
    for (const auto& s : simplices[as_size(m)])
      for (int i = 0; i <= m; ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + i);
        faces[as_size(m)].push_back(lookup[as_size(m - 1)].at(f));
      }
  }
  return {std::move(cells), std::move(faces)};
}

}  // namespace degenforge
