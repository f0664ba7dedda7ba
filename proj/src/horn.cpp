#include "degenforge/horn.hpp"

#include <algorithm>
#include <atomic>

#include "degenforge/error.hpp"
#include "parallel.hpp"

namespace degenforge {

namespace {

void check_shape(const SemisimplicialSet& X, const Horn& h) {
  if (h.n < 1 || h.k < 0 || h.k > h.n || h.faces.size() != static_cast<std::size_t>(h.n + 1))
    throw Error(Errc::InvalidInput, "malformed horn (n=" + std::to_string(h.n) + ", k=" + std::to_string(h.k) + ")");
  if (h.n > X.dim()) throw Error(Errc::InvalidInput, "horn dimension exceeds the truncation");
  for (int i = 0; i <= h.n; ++i) {
    if (i == h.k) continue;
    if (h.face(i) >= X.count(h.n - 1))
      throw Error(Errc::InvalidInput, "horn face " + std::to_string(i) + " out of range");
  }
}

// Every m-simplex, ascending.
std::vector<Index> all_of_level(const SemisimplicialSet& X, int m) {
  std::vector<Index> out(X.count(m));
  for (Index j = 0; j < out.size(); ++j) out[j] = j;
  return out;
}

class Enumerator {
 public:
  Enumerator(const SemisimplicialSet& X, int n, int k, const FaceRestriction* restriction)
      : X_(X), n_(n), k_(k), restriction_(restriction) {
    for (int i = 0; i <= n; ++i)
      if (i != k) order_.push_back(i);
    if (restriction_ && restriction_->face == order_.front()) {
      first_ = restriction_->candidates;
    } else {
      first_ = all_of_level(X, n - 1);
    }
    if (restriction_ && restriction_->face != order_.front()) {
      allowed_.assign(X.count(n - 1), 0);
      for (Index c : restriction_->candidates) allowed_[c] = 1;
    }
  }

  const std::vector<Index>& first_candidates() const noexcept { return first_; }

  /// Enumerates horns with first face `first`; returns false if `visit` stopped.
  template <class Visit>
  bool run(Index first, Visit&& visit, std::size_t& count) const {
    Horn h(n_, k_);
    h.face(order_.front()) = first;
    return extend(1, h, visit, count);
  }

 private:
  template <class Visit>
  bool extend(std::size_t pos, Horn& h, Visit& visit, std::size_t& count) const {
    if (pos == order_.size()) {
      ++count;
      return visit(h);
    }
    const int i = order_[pos];
    const int j0 = order_.front();
    const int m = n_ - 1;
    for (Index w : X_.cofaces(m, j0, X_.face(m, h.face(j0), i - 1))) {
      if (!allowed_.empty() && restriction_->face == i && !allowed_[w]) continue;
      bool ok = true;
      for (std::size_t q = 1; q < pos && ok; ++q) {
        const int j = order_[q];
        ok = X_.face(m, w, j) == X_.face(m, h.face(j), i - 1);
      }
      if (!ok) continue;
      h.face(i) = w;
      if (!extend(pos + 1, h, visit, count)) return false;
    }
    h.face(i) = kUnset;
    return true;
  }

  const SemisimplicialSet& X_;
  int n_;
  int k_;
  const FaceRestriction* restriction_;
  std::vector<int> order_;
  std::vector<Index> first_;
  std::vector<char> allowed_;
};

struct BadHorn {
  Horn horn;
  std::optional<Index> base;
};

// Decides whether a horn violates the property; may name a base simplex.
using HornTest = std::function<bool(const Horn&, std::optional<Index>& base)>;

struct SearchResult {
  std::optional<BadHorn> bad;
  std::size_t visited = 0;
};

SearchResult search(const SemisimplicialSet& X, int n, int k, const FaceRestriction* restriction,
                    const HornTest& is_bad, unsigned threads) {
  Enumerator e(X, n, k, restriction);
  const auto& first = e.first_candidates();
  std::vector<std::optional<BadHorn>> found(first.size());
  std::atomic<std::size_t> visited{0};
  auto hit = detail::first_hit(first.size(), threads, [&](std::size_t pos) {
    std::size_t count = 0;
    e.run(first[pos], [&](const Horn& h) {
      std::optional<Index> base;
      if (!is_bad(h, base)) return true;
      found[pos] = BadHorn{h, base};
      return false;
    }, count);
    visited += count;
    return found[pos].has_value();
  });
  SearchResult out;
  out.visited = visited.load();
  if (hit) out.bad = found[*hit];
  return out;
}

void require_bound(const SemisimplicialSet& X, int D) {
  if (D < 0 || D > X.dim())
    throw Error(Errc::InvalidInput, "bound " + std::to_string(D) + " outside 0.." + std::to_string(X.dim()));
}

HornVerdict run_horn_check(const SemisimplicialSet& X, int D, bool include_outer, std::string property,
                           const HornTest& is_bad, unsigned threads) {
  require_bound(X, D);
  HornVerdict v;
  v.property = std::move(property);
  v.bound = D;
  for (int n = include_outer ? 1 : 2; n <= D; ++n)
    for (int k = include_outer ? n : n - 1; k >= (include_outer ? 0 : 1); --k) {  // right horns before left
      SearchResult r = search(X, n, k, nullptr, is_bad, threads);
      v.horns_checked += r.visited;
      if (r.bad) {
        v.holds = false;
        v.witness = r.bad->horn;
        v.base_witness = r.bad->base;
        return v;
      }
    }
  return v;
}

bool no_filler(const SemisimplicialSet& X, const Horn& h) { return fillers(X, h).empty(); }

HornTest relative_test(const SemisimplicialMap& p) {
  return [&p](const Horn& h, std::optional<Index>& base) {
    const Horn img = image(p, h);
    const std::vector<Index> zs = fillers(*p.source, h);
    for (Index y : fillers(*p.target, img)) {
      const bool lifted = std::any_of(zs.begin(), zs.end(), [&](Index z) { return p(h.n, z) == y; });
      if (!lifted) {
        base = y;
        return true;
      }
    }
    return false;
  };
}

EdgeVerdict edge_check(const SemisimplicialSet& X, Index f, EdgeProperty property, int D, const HornTest& is_bad,
                       unsigned threads) {
  require_bound(X, D);
  if (f >= X.count(1)) throw Error(Errc::InvalidInput, "edge index out of range");
  const bool cart = property == EdgeProperty::Cartesian;
  EdgeVerdict v;
  v.edge = f;
  v.property = property;
  v.bound = D;
  for (int n = 2; n <= D; ++n) {
    FaceRestriction r;
    r.face = cart ? 0 : n;
    for (Index w = 0; w < X.count(n - 1); ++w) {
      const SimplexRef e = cart ? last_edge(X, {n - 1, w}) : first_edge(X, {n - 1, w});
      if (e.index == f) r.candidates.push_back(w);
    }
    SearchResult res = search(X, n, cart ? n : 0, &r, is_bad, threads);
    v.horns_checked += res.visited;
    if (res.bad) {
      v.holds = false;
      v.horn = res.bad->horn;
      v.base_simplex = res.bad->base;
      return v;
    }
  }
  return v;
}

EdgeVerdict conjunction(const EdgeVerdict& cart, const EdgeVerdict& cocart) {
  EdgeVerdict v = cart.holds ? cocart : cart;
  v.property = EdgeProperty::Equivalence;
  if (cart.holds) v.horns_checked = cart.horns_checked + cocart.horns_checked;
  return v;
}

void require_self_edge(const SemisimplicialSet& X, Index f) {
  if (X.dim() < 1 || f >= X.count(1)) throw Error(Errc::InvalidInput, "edge index out of range");
  if (X.face(1, f, 0) != X.face(1, f, 1))
    throw Error(Errc::NotASelfEdge, "edge " + std::to_string(f) + " has distinct endpoints", ErrorSite{1, f});
}

}  // namespace

std::optional<std::pair<int, int>> incompatibility(const SemisimplicialSet& X, const Horn& h) {
  if (h.n < 2) return std::nullopt;
  for (int i = 1; i <= h.n; ++i) {
    if (i == h.k) continue;
    for (int j = 0; j < i; ++j) {
      if (j == h.k) continue;
      if (X.face(h.n - 1, h.face(i), j) != X.face(h.n - 1, h.face(j), i - 1)) return std::pair{j, i};
    }
  }
  return std::nullopt;
}

std::vector<Index> fillers(const SemisimplicialSet& X, const Horn& h) {
  check_shape(X, h);
  if (auto bad = incompatibility(X, h))
    throw Error(Errc::IncompatibleHorn, "d_" + std::to_string(bad->first) + "(x_" + std::to_string(bad->second) +
                                            ") != d_" + std::to_string(bad->second - 1) + "(x_" +
                                            std::to_string(bad->first) + ")");
  const int i0 = h.k == 0 ? 1 : 0;
  std::vector<Index> out;
  for (Index z : X.cofaces(h.n, i0, h.face(i0))) {
    bool ok = true;
    for (int i = 0; i <= h.n && ok; ++i)
      if (i != h.k && i != i0) ok = X.face(h.n, z, i) == h.face(i);
    if (ok) out.push_back(z);
  }
  return out;
}

Horn image(const SemisimplicialMap& p, const Horn& h) {
  Horn out(h.n, h.k);
  for (int i = 0; i <= h.n; ++i)
    if (i != h.k) out.face(i) = p(h.n - 1, h.face(i));
  return out;
}

std::vector<Index> lifts(const SemisimplicialMap& p, const Horn& h, Index y) {
  std::vector<Index> out;
  for (Index z : fillers(*p.source, h))
    if (p(h.n, z) == y) out.push_back(z);
  return out;
}

std::size_t for_each_horn(const SemisimplicialSet& X, int n, int k, const std::function<bool(const Horn&)>& visit,
                          const FaceRestriction* restriction) {
  if (n < 1 || n > X.dim() || k < 0 || k > n) return 0;
  Enumerator e(X, n, k, restriction);
  std::size_t count = 0;
  for (Index first : e.first_candidates())
    if (!e.run(first, visit, count)) break;
  return count;
}

HornVerdict check_inner(const SemisimplicialSet& X, int D, unsigned threads) {
  return run_horn_check(X, D, false, "quasi-semicategory",
                        [&X](const Horn& h, std::optional<Index>&) { return no_filler(X, h); }, threads);
}

HornVerdict check_kan(const SemisimplicialSet& X, int D, unsigned threads) {
  return run_horn_check(X, D, true, "Kan", [&X](const Horn& h, std::optional<Index>&) { return no_filler(X, h); },
                        threads);
}

HornVerdict check_inner_fibration(const SemisimplicialMap& p, int D, unsigned threads) {
  if (D > p.target->dim() || D > p.dim()) throw Error(Errc::InvalidInput, "bound exceeds the map's truncation");
  return run_horn_check(*p.source, D, false, "inner-fibration", relative_test(p), threads);
}

std::string to_string(EdgeProperty p) {
  switch (p) {
    case EdgeProperty::Cartesian: return "cartesian";
    case EdgeProperty::Cocartesian: return "cocartesian";
    case EdgeProperty::Equivalence: return "equivalence";
    case EdgeProperty::Idempotent: return "idempotent";
  }
  return "unknown";
}

std::optional<EdgeProperty> edge_property_from_string(const std::string& s) {
  for (EdgeProperty p : {EdgeProperty::Cartesian, EdgeProperty::Cocartesian, EdgeProperty::Equivalence,
                         EdgeProperty::Idempotent})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

EdgeVerdict edge_property(const SemisimplicialSet& X, Index f, EdgeProperty property, int D, unsigned threads) {
  if (property != EdgeProperty::Cartesian && property != EdgeProperty::Cocartesian)
    throw Error(Errc::InvalidInput, "edge_property handles cartesian and cocartesian only");
  return edge_check(X, f, property, D, [&X](const Horn& h, std::optional<Index>&) { return no_filler(X, h); },
                    threads);
}

EdgeVerdict is_equivalence(const SemisimplicialSet& X, Index f, int D, unsigned threads) {
  EdgeVerdict cart = edge_property(X, f, EdgeProperty::Cartesian, D, threads);
  EdgeVerdict cocart = cart.holds ? edge_property(X, f, EdgeProperty::Cocartesian, D, threads) : EdgeVerdict{};
  return conjunction(cart, cocart);
}

std::optional<Index> is_idempotent(const SemisimplicialSet& X, Index f) {
  require_self_edge(X, f);
  if (X.dim() < 2) return std::nullopt;
  for (Index s : X.cofaces(2, 0, f))
    if (X.face(2, s, 1) == f && X.face(2, s, 2) == f) return s;
  return std::nullopt;
}

std::vector<IdempotentEquivalence> find_idempotent_equivalences(const SemisimplicialSet& X, Index x, int D,
                                                                unsigned threads) {
  if (x >= X.count(0)) throw Error(Errc::InvalidInput, "vertex index out of range");
  std::vector<IdempotentEquivalence> out;
  if (X.dim() < 1) return out;
  for (Index f : X.cofaces(1, 0, x)) {
    if (X.face(1, f, 1) != x) continue;
    const auto witness = is_idempotent(X, f);
    if (!witness) continue;
    if (is_equivalence(X, f, D, threads).holds) out.push_back({f, *witness});
  }
  return out;
}

EdgeVerdict p_edge_property(const SemisimplicialMap& p, Index f, EdgeProperty property, int D,
                            const DegeneracyTable* y_degeneracies, unsigned threads) {
  const SemisimplicialSet& X = *p.source;
  const SemisimplicialSet& Y = *p.target;
  if (D > Y.dim() || D > p.dim()) throw Error(Errc::InvalidInput, "bound exceeds the map's truncation");
  switch (property) {
    case EdgeProperty::Cartesian:
    case EdgeProperty::Cocartesian:
      return edge_check(X, f, property, D, relative_test(p), threads);
    case EdgeProperty::Equivalence: {
      EdgeVerdict cart = p_edge_property(p, f, EdgeProperty::Cartesian, D, nullptr, threads);
      EdgeVerdict cocart =
          cart.holds ? p_edge_property(p, f, EdgeProperty::Cocartesian, D, nullptr, threads) : EdgeVerdict{};
      return conjunction(cart, cocart);
    }
    case EdgeProperty::Idempotent: {
      require_self_edge(X, f);
      if (!y_degeneracies || y_degeneracies->bound() < 1 || !y_degeneracies->complete(0, 0) ||
          !y_degeneracies->complete(0, 1))
        throw Error(Errc::MissingDegeneracies, "p-idempotence needs s_0 on Y_0 and Y_1");
      EdgeVerdict v;
      v.edge = f;
      v.property = property;
      v.bound = D;
      v.holds = false;
      if (X.dim() < 2 || Y.dim() < 2) return v;
      const Index x = X.face(1, f, 0);
      const Index target = y_degeneracies->get(0, 1, y_degeneracies->get(0, 0, p(0, x)));
      for (Index s : X.cofaces(2, 0, f))
        if (X.face(2, s, 1) == f && X.face(2, s, 2) == f && p(2, s) == target) {
          v.holds = true;
          v.two_simplex = s;
          break;
        }
      return v;
    }
  }
  return {};
}

}  // namespace degenforge
