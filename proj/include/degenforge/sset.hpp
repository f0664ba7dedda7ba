#pragma once

// Finite, dimension-truncated semisimplicial sets.
//
// A SemisimplicialSet stores, for every dimension n <= D, the number of
// n-simplices and a dense table of face indices: face(n, j, i) is the index
// of d_i applied to the j-th n-simplex. Everything above D is absent, so every
// verdict computed from a set is a verdict "up to D".

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace degenforge {

using Index = std::uint32_t;
inline constexpr Index kUnset = std::numeric_limits<Index>::max();

struct SimplexRef {
  int dim = 0;
  Index index = 0;

  auto operator<=>(const SimplexRef&) const = default;
};

class SemisimplicialSet {
 public:
  /// The empty set truncated at dimension 0.
  SemisimplicialSet();

  /// `faces[n]` holds c_n * (n + 1) entries for n >= 1, row-major by simplex;
  /// `faces[0]` must be empty. Out-of-range entries are accepted here and
  /// reported by validate().
  SemisimplicialSet(std::vector<std::size_t> cells, std::vector<std::vector<Index>> faces);

  int dim() const noexcept { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<std::size_t>& cells() const noexcept { return cells_; }

  /// Number of n-simplices; zero above the truncation.
  std::size_t count(int n) const noexcept {
    return n >= 0 && n <= dim() ? cells_[static_cast<std::size_t>(n)] : 0;
  }

  Index face(int n, Index j, int i) const noexcept {
    return faces_[static_cast<std::size_t>(n)][static_cast<std::size_t>(j) * (n + 1) + i];
  }
  SimplexRef face(SimplexRef s, int i) const noexcept { return {s.dim - 1, face(s.dim, s.index, i)}; }

  std::span<const Index> faces_of(int n, Index j) const noexcept {
    return {faces_[static_cast<std::size_t>(n)].data() + static_cast<std::size_t>(j) * (n + 1),
            static_cast<std::size_t>(n + 1)};
  }
  const std::vector<Index>& face_table(int n) const noexcept { return faces_[static_cast<std::size_t>(n)]; }

  /// All n-simplices z with d_i z = `face`, ascending.
  std::span<const Index> cofaces(int n, int i, Index face) const noexcept;

  bool in_range(SimplexRef s) const noexcept {
    return s.dim >= 0 && s.dim <= dim() && s.index < count(s.dim);
  }

  /// Restriction to dimensions <= D (D may not exceed dim()).
  SemisimplicialSet truncated(int D) const;

  friend bool operator==(const SemisimplicialSet& a, const SemisimplicialSet& b) {
    return a.cells_ == b.cells_ && a.faces_ == b.faces_;
  }

 private:
  struct CofaceIndex {
    std::vector<std::uint32_t> offsets;
    std::vector<Index> items;
  };

  void build_cofaces();

  std::vector<std::size_t> cells_;
  std::vector<std::vector<Index>> faces_;
  std::vector<std::vector<CofaceIndex>> cofaces_;  // [n][i]
};

using SSetPtr = std::shared_ptr<const SemisimplicialSet>;

inline SSetPtr share(SemisimplicialSet s) { return std::make_shared<const SemisimplicialSet>(std::move(s)); }

/// 64-bit FNV-1a over the cell counts and face tables, as 16 hex digits.
std::string content_hash(const SemisimplicialSet& X);

// ---------------------------------------------------------------------------
// Validation

struct FaceViolation {
  enum class Kind { OutOfRange, Identity };
  Kind kind = Kind::Identity;
  int n = 0;
  Index j = 0;
  int i = 0;
  int k = 0;  // for OutOfRange, unused

  bool operator==(const FaceViolation&) const = default;
};

struct ValidationReport {
  std::vector<FaceViolation> violations;
  std::size_t checked = 0;  // identity instances examined

  bool ok() const noexcept { return violations.empty(); }
};

/// Checks every reference is in range and d_i d_k = d_{k-1} d_i for i < k.
ValidationReport validate(const SemisimplicialSet& X);

/// d_0 applied dim-1 times: the edge on the last two vertices.
SimplexRef last_edge(const SemisimplicialSet& X, SimplexRef s);
/// d_2 ∘ ... ∘ d_dim: the edge on vertices {0, 1}.
SimplexRef first_edge(const SemisimplicialSet& X, SimplexRef s);

// ---------------------------------------------------------------------------
// Maps and subcomplexes

struct SemisimplicialMap {
  SSetPtr source;
  SSetPtr target;
  std::vector<std::vector<Index>> levels;  // levels[n][j] = image of the j-th n-simplex

  int dim() const noexcept { return static_cast<int>(levels.size()) - 1; }
  Index operator()(int n, Index j) const noexcept { return levels[static_cast<std::size_t>(n)][j]; }
};

struct MapViolation {
  int n = 0;
  Index j = 0;
  int i = -1;  // -1 means the image itself is out of range

  bool operator==(const MapViolation&) const = default;
};

struct MapReport {
  std::vector<MapViolation> violations;
  std::size_t checked = 0;

  bool ok() const noexcept { return violations.empty(); }
};

/// F(d_i x) = d_i F(x) for every x of dimension 1..F.dim() and every i.
MapReport validate_map(const SemisimplicialMap& F);

SemisimplicialMap identity_map(const SSetPtr& X);
/// The unique map to the terminal set of the same truncation.
SemisimplicialMap terminal_map(const SSetPtr& X);

class Subcomplex {
 public:
  Subcomplex() = default;
  /// `members[n]` lists ambient indices of dimension n; it is sorted and
  /// deduplicated here. Closure under faces is checked by is_closed().
  Subcomplex(SSetPtr ambient, std::vector<std::vector<Index>> members);

  const SSetPtr& ambient() const noexcept { return ambient_; }
  const std::vector<std::vector<Index>>& members() const noexcept { return members_; }

  bool contains(int n, Index j) const noexcept;
  /// Position of ambient simplex (n, j) within members[n].
  std::optional<Index> local_index(int n, Index j) const noexcept;
  Index ambient_index(int n, Index local) const noexcept { return members_[static_cast<std::size_t>(n)][local]; }

  /// First member with a face outside the subcomplex, if any.
  std::optional<SimplexRef> first_unclosed() const;
  bool is_closed() const { return !first_unclosed().has_value(); }

  /// The subcomplex as a set in its own (local) indexing, plus its inclusion.
  SSetPtr induced() const;
  SemisimplicialMap inclusion() const;

 private:
  SSetPtr ambient_;
  std::vector<std::vector<Index>> members_;
  std::vector<std::vector<Index>> local_;  // ambient -> local, kUnset if absent
};

// ---------------------------------------------------------------------------
// Constructions

struct ProductSet {
  SSetPtr set;
  SemisimplicialMap first;   // projection to the left factor
  SemisimplicialMap second;  // projection to the right factor
  std::vector<std::size_t> right_counts;

  /// Index of the pair (a, b) at dimension n.
  Index pair(int n, Index a, Index b) const noexcept {
    return static_cast<Index>(a * right_counts[static_cast<std::size_t>(n)] + b);
  }
};

/// Levelwise product truncated at min(D_X, D_Y); pairs are ordered
/// lexicographically (left coordinate major).
ProductSet product(const SSetPtr& X, const SSetPtr& Y);

/// One simplex in every dimension up to D.
SemisimplicialSet terminal_set(int D);
/// The semisimplicial n-simplex truncated at D: strictly increasing vertex
/// tuples in lexicographic order.
SemisimplicialSet standard_simplex(int n, int D);
SemisimplicialSet empty_set(int D);

}  // namespace degenforge
