#pragma once

// Finite (possibly non-unital) categories and their nerves.
//
// An n-simplex of the nerve is a chain of n composable arrows (a_1, ..., a_n)
// with tgt(a_i) = src(a_{i+1}); 0-simplices are objects. Chains are
// enumerated lexicographically by arrow index, which fixes the canonical
// simplex order everything downstream breaks ties with.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "degenforge/degeneracy.hpp"
#include "degenforge/sset.hpp"

namespace degenforge {

struct Arrow {
  std::string name;
  Index src = 0;
  Index tgt = 0;
};

class CategoryPresentation {
 public:
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<std::optional<Index>> identities;  // empty, or one slot per object

  Index add_object(std::string name);
  Index add_arrow(std::string name, Index src, Index tgt);
  void set_identity(Index object, Index arrow);
  /// Records g ∘ f = gf.
  void set_composite(Index g, Index f, Index gf);
  /// g ∘ f, or kUnset when not recorded.
  Index compose(Index g, Index f) const noexcept;

  bool unital() const noexcept;
  std::optional<Index> identity(Index object) const noexcept;
  std::optional<Index> find_object(const std::string& name) const;
  std::optional<Index> find_arrow(const std::string& name) const;

 private:
  std::map<std::pair<Index, Index>, Index> composites_;
};

/// Throws InvalidCategory naming the violated law: typing, closure of
/// composition, associativity or the identity laws.
void validate_category(const CategoryPresentation& C);

// Fixture categories.
CategoryPresentation cyclic_group(int order);  // one object, arrows "1", "g", "g2", ...
CategoryPresentation idempotent_monoid();      // one object, arrows "1", "e" with e·e = e
CategoryPresentation interval_poset();         // 0 < 1
CategoryPresentation square_poset();           // {0,1} x {0,1} with the product order
CategoryPresentation j_groupoid();             // objects 0, 1; u: 0 -> 1, v: 1 -> 0 inverse
CategoryPresentation free_arrow();             // non-unital x -> y, nothing composes
CategoryPresentation product(const CategoryPresentation& A, const CategoryPresentation& B);

struct NerveBundle {
  CategoryPresentation category;
  SSetPtr sset;
  /// chains[n][j]: the arrows of the j-th n-chain (n >= 1); chains[0][j] = {object}.
  std::vector<std::vector<std::vector<Index>>> chains;
  /// Identity insertion s_k for n <= D - 1; present iff the category is unital.
  std::optional<DegeneracyTable> oracle;

  Index index_of(int n, const std::vector<Index>& chain) const;

  std::vector<std::map<std::vector<Index>, Index>> chain_index;
};

NerveBundle nerve(const CategoryPresentation& C, int D);

/// Both -∘f : C(y,z) -> C(x,z) and f∘- : C(z,x) -> C(z,y) are bijective for
/// every object z. Requires identities.
bool equivalence_criterion(const CategoryPresentation& C, Index f);

}  // namespace degenforge
