#pragma once

// Horns, filler search and the lifting-condition checkers built on them.
//
// Every checker quantifies over horns of dimension <= D only and reports the
// bound it used. Enumeration order is canonical (faces chosen in ascending
// face index, candidates in ascending simplex index), so witnesses are
// reproducible regardless of the thread count.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degenforge/degeneracy.hpp"
#include "degenforge/sset.hpp"

namespace degenforge {

/// A compatible family of faces x_i (i != k) of a would-be n-simplex.
struct Horn {
  int n = 0;
  int k = 0;
  std::vector<Index> faces;  // n + 1 entries, faces[k] == kUnset

  Horn() = default;
  Horn(int n_, int k_) : n(n_), k(k_), faces(static_cast<std::size_t>(n_ + 1), kUnset) {}

  Index face(int i) const noexcept { return faces[static_cast<std::size_t>(i)]; }
  Index& face(int i) noexcept { return faces[static_cast<std::size_t>(i)]; }
  bool inner() const noexcept { return 0 < k && k < n; }

  bool operator==(const Horn&) const = default;
};

/// First pair (j, i), j < i, both != k, with d_j(x_i) != d_{i-1}(x_j).
std::optional<std::pair<int, int>> incompatibility(const SemisimplicialSet& X, const Horn& h);
inline bool is_compatible(const SemisimplicialSet& X, const Horn& h) { return !incompatibility(X, h); }

/// Simplices z of dimension h.n with d_i z = x_i for all i != k, ascending.
/// Throws IncompatibleHorn for incompatible faces and InvalidInput for
/// malformed horns.
std::vector<Index> fillers(const SemisimplicialSet& X, const Horn& h);

/// The horn p(h) in the target of p.
Horn image(const SemisimplicialMap& p, const Horn& h);
/// Fillers z of h in the source of p with p(z) = y, ascending.
std::vector<Index> lifts(const SemisimplicialMap& p, const Horn& h, Index y);

/// Restricts one face of enumerated horns to a sorted candidate list.
struct FaceRestriction {
  int face = 0;
  std::vector<Index> candidates;
};

/// Calls `visit` on every compatible (n, k)-horn in canonical order until it
/// returns false. Returns the number of horns visited.
std::size_t for_each_horn(const SemisimplicialSet& X, int n, int k, const std::function<bool(const Horn&)>& visit,
                          const FaceRestriction* restriction = nullptr);

struct HornVerdict {
  std::string property;
  int bound = 0;
  bool holds = true;
  std::optional<Horn> witness;
  std::optional<Index> base_witness;  // simplex of the base a relative witness must lie over
  std::size_t horns_checked = 0;      // meaningful only when holds
};

/// Every compatible inner horn of dimension <= D has a filler.
HornVerdict check_inner(const SemisimplicialSet& X, int D, unsigned threads = 1);
/// Every compatible horn 0 <= k <= n, 1 <= n <= D has a filler.
HornVerdict check_kan(const SemisimplicialSet& X, int D, unsigned threads = 1);
/// Every inner horn in the source lifts over every filler of its image.
HornVerdict check_inner_fibration(const SemisimplicialMap& p, int D, unsigned threads = 1);

enum class EdgeProperty { Cartesian, Cocartesian, Equivalence, Idempotent };
std::string to_string(EdgeProperty p);
std::optional<EdgeProperty> edge_property_from_string(const std::string& s);

struct EdgeVerdict {
  Index edge = 0;
  EdgeProperty property = EdgeProperty::Cartesian;
  int bound = 0;
  bool holds = true;
  std::optional<Horn> horn;              // unfillable horn for negative (co)cartesian verdicts
  std::optional<Index> base_simplex;     // relative case: the simplex of the base it lies over
  std::optional<Index> two_simplex;      // idempotency witness
  std::size_t horns_checked = 0;
};

/// Cartesian: every Λⁿₙ with last edge f fills; cocartesian: every Λⁿ₀ with
/// first edge f fills; 2 <= n <= D.
EdgeVerdict edge_property(const SemisimplicialSet& X, Index f, EdgeProperty property, int D, unsigned threads = 1);
EdgeVerdict is_equivalence(const SemisimplicialSet& X, Index f, int D, unsigned threads = 1);

/// First 2-simplex with all three faces f. Throws NotASelfEdge.
std::optional<Index> is_idempotent(const SemisimplicialSet& X, Index f);

struct IdempotentEquivalence {
  Index edge = 0;
  Index witness = 0;

  bool operator==(const IdempotentEquivalence&) const = default;
};

/// All idempotent equivalences x -> x up to D, in edge order.
std::vector<IdempotentEquivalence> find_idempotent_equivalences(const SemisimplicialSet& X, Index x, int D,
                                                                unsigned threads = 1);

/// Relative versions over p: X -> Y. The idempotent property needs the
/// degeneracies of Y and asks for a 2-simplex over s_0 s_0 p(x).
EdgeVerdict p_edge_property(const SemisimplicialMap& p, Index f, EdgeProperty property, int D,
                            const DegeneracyTable* y_degeneracies = nullptr, unsigned threads = 1);

}  // namespace degenforge
