#include "degenforge/nerve.hpp"

#include <algorithm>
#include <set>

#include "degenforge/error.hpp"

namespace degenforge {

Index CategoryPresentation::add_object(std::string name) {
  objects.push_back(std::move(name));
  if (!identities.empty()) identities.emplace_back();
  return static_cast<Index>(objects.size() - 1);
}

Index CategoryPresentation::add_arrow(std::string name, Index src, Index tgt) {
  arrows.push_back({std::move(name), src, tgt});
  return static_cast<Index>(arrows.size() - 1);
}

void CategoryPresentation::set_identity(Index object, Index arrow) {
  identities.resize(objects.size());
  identities[object] = arrow;
}

void CategoryPresentation::set_composite(Index g, Index f, Index gf) { composites_[{g, f}] = gf; }

Index CategoryPresentation::compose(Index g, Index f) const noexcept {
  auto it = composites_.find({g, f});
  return it == composites_.end() ? kUnset : it->second;
}

bool CategoryPresentation::unital() const noexcept {
  if (identities.size() != objects.size()) return objects.empty();
  return std::all_of(identities.begin(), identities.end(), [](const auto& id) { return id.has_value(); });
}

std::optional<Index> CategoryPresentation::identity(Index object) const noexcept {
  if (object >= identities.size()) return std::nullopt;
  return identities[object];
}

std::optional<Index> CategoryPresentation::find_object(const std::string& name) const {
  auto it = std::find(objects.begin(), objects.end(), name);
  if (it == objects.end()) return std::nullopt;
  return static_cast<Index>(it - objects.begin());
}

std::optional<Index> CategoryPresentation::find_arrow(const std::string& name) const {
  auto it = std::find_if(arrows.begin(), arrows.end(), [&](const Arrow& a) { return a.name == name; });
  if (it == arrows.end()) return std::nullopt;
  return static_cast<Index>(it - arrows.begin());
}

void validate_category(const CategoryPresentation& C) {
  const auto A = static_cast<Index>(C.arrows.size());
  const auto O = static_cast<Index>(C.objects.size());
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidCategory, why); };
  for (const Arrow& a : C.arrows)
    if (a.src >= O || a.tgt >= O) fail("arrow " + a.name + " has an endpoint outside the object list");
  if (!C.identities.empty() && C.identities.size() != O) fail("identity table size differs from object count");

  for (Index g = 0; g < A; ++g)
    for (Index f = 0; f < A; ++f) {
      const Index gf = C.compose(g, f);
      const bool composable = C.arrows[f].tgt == C.arrows[g].src;
      if (!composable) {
        if (gf != kUnset) fail("composite recorded for non-composable " + C.arrows[g].name + "∘" + C.arrows[f].name);
        continue;
      }
      if (gf == kUnset) fail("closure: " + C.arrows[g].name + "∘" + C.arrows[f].name + " is not defined");
      if (gf >= A) fail("composite out of range");
      if (C.arrows[gf].src != C.arrows[f].src || C.arrows[gf].tgt != C.arrows[g].tgt)
        fail("typing: " + C.arrows[g].name + "∘" + C.arrows[f].name + " has the wrong endpoints");
    }

  for (Index h = 0; h < A; ++h)
    for (Index g = 0; g < A; ++g) {
      if (C.arrows[g].tgt != C.arrows[h].src) continue;
      for (Index f = 0; f < A; ++f) {
        if (C.arrows[f].tgt != C.arrows[g].src) continue;
        if (C.compose(h, C.compose(g, f)) != C.compose(C.compose(h, g), f))
          fail("associativity fails on (" + C.arrows[h].name + ", " + C.arrows[g].name + ", " + C.arrows[f].name +
               ")");
      }
    }

  for (Index x = 0; x < C.identities.size(); ++x) {
    if (!C.identities[x]) continue;
    const Index id = *C.identities[x];
    if (id >= A || C.arrows[id].src != x || C.arrows[id].tgt != x)
      fail("identity of " + C.objects[x] + " is not an endomorphism of it");
    for (Index f = 0; f < A; ++f) {
      if (C.arrows[f].tgt == x && C.compose(id, f) != f) fail("left identity law fails for " + C.arrows[f].name);
      if (C.arrows[f].src == x && C.compose(f, id) != f) fail("right identity law fails for " + C.arrows[f].name);
    }
  }
}

CategoryPresentation cyclic_group(int order) {
  if (order < 1) throw Error(Errc::InvalidInput, "group order must be positive");
  CategoryPresentation C;
  C.add_object("*");
  for (int a = 0; a < order; ++a) C.add_arrow(a == 0 ? "1" : a == 1 ? "g" : "g" + std::to_string(a), 0, 0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) C.set_composite(static_cast<Index>(a), static_cast<Index>(b), (a + b) % order);
  C.set_identity(0, 0);
  return C;
}

CategoryPresentation idempotent_monoid() {
  CategoryPresentation C;
  C.add_object("*");
  const Index one = C.add_arrow("1", 0, 0);
  const Index e = C.add_arrow("e", 0, 0);
  C.set_composite(one, one, one);
  C.set_composite(one, e, e);
  C.set_composite(e, one, e);
  C.set_composite(e, e, e);
  C.set_identity(0, one);
  return C;
}

namespace {

// The category of a finite poset given by its order relation on 0..size-1.
template <class Leq>
CategoryPresentation poset(const std::vector<std::string>& names, Leq leq) {
  CategoryPresentation C;
  for (const auto& n : names) C.add_object(n);
  const auto O = static_cast<Index>(names.size());
  std::map<std::pair<Index, Index>, Index> arrow_of;
  for (Index x = 0; x < O; ++x) arrow_of[{x, x}] = C.add_arrow("id" + names[x], x, x);
  for (Index x = 0; x < O; ++x)
    for (Index y = 0; y < O; ++y)
      if (x != y && leq(x, y)) arrow_of[{x, y}] = C.add_arrow(names[x] + "->" + names[y], x, y);
  for (const auto& [xy, f] : arrow_of)
    for (const auto& [yz, g] : arrow_of)
      if (xy.second == yz.first) C.set_composite(g, f, arrow_of.at({xy.first, yz.second}));
  for (Index x = 0; x < O; ++x) C.set_identity(x, arrow_of.at({x, x}));
  return C;
}

}  // namespace

CategoryPresentation interval_poset() {
  return poset({"0", "1"}, [](Index x, Index y) { return x <= y; });
}

CategoryPresentation square_poset() {
  // objects 00, 01, 10, 11 ordered coordinatewise
  return poset({"00", "01", "10", "11"}, [](Index x, Index y) { return (x & y) == x; });
}

CategoryPresentation j_groupoid() {
  CategoryPresentation C;
  C.add_object("0");
  C.add_object("1");
  const Index id0 = C.add_arrow("id0", 0, 0);
  const Index id1 = C.add_arrow("id1", 1, 1);
  const Index u = C.add_arrow("u", 0, 1);
  const Index v = C.add_arrow("v", 1, 0);
  C.set_composite(id0, id0, id0);
  C.set_composite(id1, id1, id1);
  C.set_composite(u, id0, u);
  C.set_composite(id1, u, u);
  C.set_composite(v, id1, v);
  C.set_composite(id0, v, v);
  C.set_composite(v, u, id0);
  C.set_composite(u, v, id1);
  C.set_identity(0, id0);
  C.set_identity(1, id1);
  return C;
}

CategoryPresentation free_arrow() {
  CategoryPresentation C;
  C.add_object("x");
  C.add_object("y");
  C.add_arrow("a", 0, 1);
  return C;
}

CategoryPresentation product(const CategoryPresentation& A, const CategoryPresentation& B) {
  CategoryPresentation C;
  const auto ob = static_cast<Index>(B.objects.size());
  const auto ab = static_cast<Index>(B.arrows.size());
  for (const auto& x : A.objects)
    for (const auto& y : B.objects) C.add_object("(" + x + "," + y + ")");
  for (const Arrow& f : A.arrows)
    for (const Arrow& g : B.arrows) C.add_arrow("(" + f.name + "," + g.name + ")", f.src * ob + g.src, f.tgt * ob + g.tgt);
  for (Index f1 = 0; f1 < A.arrows.size(); ++f1)
    for (Index f2 = 0; f2 < A.arrows.size(); ++f2) {
      const Index f = A.compose(f2, f1);
      if (f == kUnset) continue;
      for (Index g1 = 0; g1 < ab; ++g1)
        for (Index g2 = 0; g2 < ab; ++g2) {
          const Index g = B.compose(g2, g1);
          if (g != kUnset) C.set_composite(f2 * ab + g2, f1 * ab + g1, f * ab + g);
        }
    }
  if (A.unital() && B.unital())
    for (Index x = 0; x < A.objects.size(); ++x)
      for (Index y = 0; y < ob; ++y) C.set_identity(x * ob + y, *A.identity(x) * ab + *B.identity(y));
  return C;
}

Index NerveBundle::index_of(int n, const std::vector<Index>& chain) const {
  if (n == 0) return chain.at(0);
  return chain_index.at(static_cast<std::size_t>(n)).at(chain);
}

NerveBundle nerve(const CategoryPresentation& C, int D) {
  if (D < 0) throw Error(Errc::InvalidInput, "negative truncation");
  validate_category(C);
  NerveBundle out;
  out.category = C;
  const auto levels = static_cast<std::size_t>(D + 1);
  out.chains.resize(levels);
  out.chain_index.resize(levels);
  for (Index x = 0; x < C.objects.size(); ++x) out.chains[0].push_back({x});
  for (std::size_t n = 1; n < levels; ++n) {
    if (n == 1) {
      for (Index a = 0; a < C.arrows.size(); ++a) out.chains[1].push_back({a});
    } else {
      for (const auto& prefix : out.chains[n - 1])
        for (Index a = 0; a < C.arrows.size(); ++a)
          if (C.arrows[a].src == C.arrows[prefix.back()].tgt) {
            auto chain = prefix;
            chain.push_back(a);
            out.chains[n].push_back(std::move(chain));
          }
    }
    for (Index j = 0; j < out.chains[n].size(); ++j) out.chain_index[n][out.chains[n][j]] = j;
  }

  std::vector<std::size_t> cells;
  std::vector<std::vector<Index>> faces(levels);
  for (std::size_t n = 0; n < levels; ++n) {
    cells.push_back(out.chains[n].size());
    if (n == 0) continue;
    for (const auto& c : out.chains[n]) {
      if (n == 1) {
        faces[1].push_back(C.arrows[c[0]].tgt);
        faces[1].push_back(C.arrows[c[0]].src);
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<Index> f;
        if (i == 0) {
          f.assign(c.begin() + 1, c.end());
        } else if (i == n) {
          f.assign(c.begin(), c.end() - 1);
        } else {
          f.assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i - 1));
          f.push_back(C.compose(c[i], c[i - 1]));
          f.insert(f.end(), c.begin() + static_cast<std::ptrdiff_t>(i + 1), c.end());
        }
        faces[n].push_back(out.index_of(static_cast<int>(n - 1), f));
      }
    }
  }
  out.sset = share(SemisimplicialSet(std::move(cells), std::move(faces)));

  if (C.unital() && D >= 1) {
    DegeneracyTable oracle(*out.sset, D - 1);
    for (int n = 0; n < D; ++n) {
      const auto& level = out.chains[static_cast<std::size_t>(n)];
      for (Index j = 0; j < level.size(); ++j) {
        const auto& c = level[j];
        for (int k = 0; k <= n; ++k) {
          std::vector<Index> d;
          Index vertex = 0;
          if (n == 0) {
            vertex = c[0];
          } else {
            vertex = k == 0 ? C.arrows[c[0]].src : C.arrows[c[static_cast<std::size_t>(k - 1)]].tgt;
            d = c;
          }
          d.insert(d.begin() + k, *C.identity(vertex));
          oracle.set(k, n, j, out.index_of(n + 1, d));
        }
      }
    }
    out.oracle = std::move(oracle);
  }
  return out;
}

bool equivalence_criterion(const CategoryPresentation& C, Index f) {
  if (!C.unital()) throw Error(Errc::InvalidInput, "the equivalence criterion needs identities");
  if (f >= C.arrows.size()) throw Error(Errc::InvalidInput, "arrow index out of range");
  const Index x = C.arrows[f].src;
  const Index y = C.arrows[f].tgt;
  auto hom = [&C](Index a, Index b) {
    std::vector<Index> out;
    for (Index h = 0; h < C.arrows.size(); ++h)
      if (C.arrows[h].src == a && C.arrows[h].tgt == b) out.push_back(h);
    return out;
  };
  auto bijective = [](const std::vector<Index>& from, const std::vector<Index>& to, auto&& map) {
    std::set<Index> image;
    for (Index h : from) image.insert(map(h));
    return image.size() == from.size() && image == std::set<Index>(to.begin(), to.end());
  };
  for (Index z = 0; z < C.objects.size(); ++z) {
    if (!bijective(hom(y, z), hom(x, z), [&](Index g) { return C.compose(g, f); })) return false;
    if (!bijective(hom(z, x), hom(z, y), [&](Index h) { return C.compose(f, h); })) return false;
  }
  return true;
}

}  // namespace degenforge
