#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "degenforge/error.hpp"
#include "degenforge/horn.hpp"

using namespace degenforge;

namespace {

Horn horn(int n, int k, std::initializer_list<std::pair<int, Index>> faces) {
  Horn h(n, k);
  for (auto [i, x] : faces) h.face(i) = x;
  return h;
}

}  // namespace

TEST_CASE("fillers: N2 inner horn from (g, g)") {
  const auto nb = fx::N2(3);
  const Index g = fx::arrow(nb, "g");
  const auto h = horn(2, 1, {{0, g}, {2, g}});
  const auto f = fillers(*nb.sset, h);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == fx::chain(nb, {"g", "g"}));
  CHECK(nb.sset->face(2, f[0], 1) == fx::arrow(nb, "1"));
}

TEST_CASE("fillers: no valid inner 2-horn in the 1-simplex") {
  const auto X = fx::delta(1, 2);
  CHECK_THROWS_AS(fillers(*X, horn(2, 1, {{0, 0}, {2, 0}})), Error);
  try {
    fillers(*X, horn(2, 1, {{0, 0}, {2, 0}}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IncompatibleHorn);
  }
  CHECK(oracle::naive_horns(*X, 2, 1).empty());
}

TEST_CASE("fillers: NM outer horn e, 1 has none") {
  const auto nb = fx::NM(3);
  CHECK(fillers(*nb.sset, horn(2, 2, {{0, fx::arrow(nb, "e")}, {1, fx::arrow(nb, "1")}})).empty());
}

TEST_CASE("fillers reject malformed horns") {
  const auto nb = fx::N2(2);
  CHECK_THROWS_AS(fillers(*nb.sset, horn(3, 1, {{0, 0}, {2, 0}, {3, 0}})), Error);  // above truncation
  CHECK_THROWS_AS(fillers(*nb.sset, horn(2, 1, {{0, 0}, {2, 9}})), Error);          // out of range
}

TEST_CASE("check_inner") {
  const auto n2 = fx::N2(4);
  const auto v = check_inner(*n2.sset, 4);
  CHECK(v.holds);
  CHECK(v.bound == 4);
  CHECK(v.property == "quasi-semicategory");
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k)
      for_each_horn(*n2.sset, n, k, [&](const Horn& h) {
        CHECK(fillers(*n2.sset, h).size() == 1);
        return true;
      });
  CHECK(check_inner(*fx::NM(4).sset, 4).holds);
  CHECK(check_inner(*fx::delta(1, 4), 4).holds);
}

TEST_CASE("check_kan") {
  CHECK(check_kan(*fx::N2(4).sset, 4).holds);

  const auto nm = fx::NM(3);
  const auto v = check_kan(*nm.sset, 3);
  REQUIRE_FALSE(v.holds);
  CHECK(*v.witness == horn(2, 2, {{0, fx::arrow(nm, "e")}, {1, fx::arrow(nm, "1")}}));
  CHECK(oracle::naive_fillers(*nm.sset, *v.witness).empty());

  const auto np = fx::NP(3);
  const auto w = check_kan(*np.sset, 3);
  REQUIRE_FALSE(w.holds);
  CHECK(w.witness->n <= 2);
  CHECK(oracle::naive_fillers(*np.sset, *w.witness).empty());
}

TEST_CASE("check_kan demands both 1-dimensional horns") {
  const auto X = fx::delta(1, 1);
  const auto v = check_kan(*X, 1);
  REQUIRE_FALSE(v.holds);
  CHECK(v.witness->n == 1);
}

TEST_CASE("edge_property") {
  const auto n2 = fx::N2(4);
  const Index g = fx::arrow(n2, "g");
  CHECK(edge_property(*n2.sset, g, EdgeProperty::Cartesian, 4).holds);

  const auto nm = fx::NM(2);
  const auto v = edge_property(*nm.sset, fx::arrow(nm, "e"), EdgeProperty::Cartesian, 2);
  REQUIRE_FALSE(v.holds);
  CHECK(*v.horn == horn(2, 2, {{0, fx::arrow(nm, "e")}, {1, fx::arrow(nm, "1")}}));

  const auto np = fx::NP(2);
  const Index up = fx::arrow(np, "0->1");
  const auto w = edge_property(*np.sset, up, EdgeProperty::Cartesian, 2);
  REQUIRE_FALSE(w.holds);
  CHECK(w.horn->face(0) == up);
  CHECK(w.horn->face(1) == fx::arrow(np, "id1"));
  CHECK(oracle::naive_fillers(*np.sset, *w.horn).empty());
}

TEST_CASE("is_equivalence") {
  const auto n2 = fx::N2(4);
  CHECK(is_equivalence(*n2.sset, fx::arrow(n2, "g"), 4).holds);
  const auto nm = fx::NM(4);
  const auto e = is_equivalence(*nm.sset, fx::arrow(nm, "e"), 4);
  CHECK_FALSE(e.holds);
  CHECK(e.horn.has_value());
  CHECK(e.property == EdgeProperty::Equivalence);
  CHECK(is_equivalence(*nm.sset, fx::arrow(nm, "1"), 4).holds);
}

TEST_CASE("is_idempotent") {
  const auto nm = fx::NM(3);
  CHECK(is_idempotent(*nm.sset, fx::arrow(nm, "e")) == fx::chain(nm, {"e", "e"}));
  CHECK(is_idempotent(*nm.sset, fx::arrow(nm, "1")) == fx::chain(nm, {"1", "1"}));
  const auto np = fx::NP(3);
  try {
    is_idempotent(*np.sset, fx::arrow(np, "0->1"));
    FAIL("expected NotASelfEdge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotASelfEdge);
  }
  const auto n2 = fx::N2(3);
  CHECK_FALSE(is_idempotent(*n2.sset, fx::arrow(n2, "g")).has_value());
}

TEST_CASE("find_idempotent_equivalences") {
  const auto n2 = fx::N2(4);
  const auto a = find_idempotent_equivalences(*n2.sset, 0, 4);
  REQUIRE(a.size() == 1);
  CHECK(a[0].edge == fx::arrow(n2, "1"));
  const auto nm = fx::NM(4);
  const auto b = find_idempotent_equivalences(*nm.sset, 0, 4);
  REQUIRE(b.size() == 1);
  CHECK(b[0].edge == fx::arrow(nm, "1"));
  const auto d1 = fx::delta(1, 3);
  CHECK(find_idempotent_equivalences(*d1, 0, 3).empty());
  CHECK(find_idempotent_equivalences(*d1, 1, 3).empty());
}

TEST_CASE("check_inner_fibration") {
  const auto n2 = fx::N2(4);
  const auto nj = fx::NJ(4);
  const auto P = product(n2.sset, nj.sset);
  CHECK(check_inner_fibration(P.second, 4).holds);
  CHECK(check_inner_fibration(terminal_map(n2.sset), 4).holds);
  CHECK(check_inner_fibration(identity_map(fx::NM(3).sset), 3).holds);
}

TEST_CASE("check_inner_fibration finds a horn that does not lift") {
  // the spine 0 -> 1 -> 2 inside the 2-simplex: its inner horn has nothing to lift to
  const SemisimplicialSet spine({3, 2, 0}, {{}, {1, 0, 2, 1}, {}});
  const auto X = share(spine);
  const auto Y = share(standard_simplex(2, 2));
  // edge 0 = 0->1 maps to {0,1} = 0; edge 1 = 1->2 maps to {1,2} = 2
  SemisimplicialMap p{X, Y, {{0, 1, 2}, {0, 2}, {}}};
  REQUIRE(validate_map(p).ok());
  const auto v = check_inner_fibration(p, 2);
  REQUIRE_FALSE(v.holds);
  CHECK(v.witness->n == 2);
  CHECK(v.base_witness == Index{0});
}

TEST_CASE("p_edge_property") {
  const auto n2 = fx::N2(4);
  const auto nj = fx::NJ(4);
  const auto P = product(n2.sset, nj.sset);
  const Index e = P.pair(1, fx::arrow(n2, "1"), fx::arrow(nj, "id0"));
  CHECK(p_edge_property(P.second, e, EdgeProperty::Cartesian, 3).holds);
  CHECK(p_edge_property(P.second, e, EdgeProperty::Cocartesian, 3).holds);
  const auto idem = p_edge_property(P.second, e, EdgeProperty::Idempotent, 3, &*nj.oracle);
  REQUIRE(idem.holds);
  CHECK(*idem.two_simplex == P.pair(2, fx::chain(n2, {"1", "1"}), fx::chain(nj, {"id0", "id0"})));
  try {
    p_edge_property(P.second, e, EdgeProperty::Idempotent, 3);
    FAIL("expected MissingDegeneracies");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::MissingDegeneracies);
  }
}

TEST_CASE("relative classifiers over the terminal base match the absolute ones") {
  for (const auto& nb : {fx::N2(3), fx::NM(3), fx::NP(3), fx::NJ(3)}) {
    const auto p = terminal_map(nb.sset);
    const DegeneracyTable pt = [] {
      const auto T = terminal_set(3);
      DegeneracyTable t(T, 2);
      for (int n = 0; n <= 2; ++n)
        for (int k = 0; k <= n; ++k) t.set(k, n, 0, 0);
      return t;
    }();
    for (Index f = 0; f < nb.sset->count(1); ++f) {
      for (auto prop : {EdgeProperty::Cartesian, EdgeProperty::Cocartesian}) {
        const auto a = edge_property(*nb.sset, f, prop, 3);
        const auto r = p_edge_property(p, f, prop, 3);
        CHECK(a.holds == r.holds);
        CHECK(a.horn == r.horn);
      }
      if (nb.sset->face(1, f, 0) == nb.sset->face(1, f, 1)) {
        const auto r = p_edge_property(p, f, EdgeProperty::Idempotent, 3, &pt);
        CHECK(r.two_simplex == is_idempotent(*nb.sset, f));
      }
    }
  }
}

TEST_CASE("negative edge verdicts persist as the bound grows") {
  const auto nm = fx::NM(5);
  const Index e = fx::arrow(nm, "e");
  for (auto prop : {EdgeProperty::Cartesian, EdgeProperty::Cocartesian}) {
    std::optional<Horn> first;
    for (int D = 2; D <= 5; ++D) {
      const auto v = edge_property(*nm.sset, e, prop, D);
      if (first) {
        CHECK_FALSE(v.holds);
        CHECK(*v.horn == *first);
      } else if (!v.holds) {
        first = v.horn;
      }
    }
    CHECK(first.has_value());
  }
}

TEST_CASE("thread count does not change verdicts or witnesses") {
  for (const auto& nb : {fx::NM(4), fx::NP(4), fx::NSq(4)}) {
    const auto a = check_kan(*nb.sset, 4, 1);
    const auto b = check_kan(*nb.sset, 4, 4);
    CHECK(a.holds == b.holds);
    CHECK(a.witness == b.witness);
    for (Index f = 0; f < nb.sset->count(1); ++f) {
      const auto x = is_equivalence(*nb.sset, f, 4, 1);
      const auto y = is_equivalence(*nb.sset, f, 4, 3);
      CHECK(x.holds == y.holds);
      CHECK(x.horn == y.horn);
    }
  }
  const auto P = product(fx::N2(4).sset, fx::NJ(4).sset);
  const auto u = check_inner_fibration(P.second, 4, 1);
  const auto w = check_inner_fibration(P.second, 4, 4);
  CHECK(u.holds == w.holds);
  CHECK(u.horns_checked == w.horns_checked);
}

TEST_CASE("for_each_horn visits exactly the compatible horns in order") {
  const auto nb = fx::NP(3);
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k <= n; ++k) {
      std::vector<Horn> seen;
      for_each_horn(*nb.sset, n, k, [&](const Horn& h) {
        seen.push_back(h);
        return true;
      });
      auto want = oracle::naive_horns(*nb.sset, n, k);
      std::sort(seen.begin(), seen.end(), [](const Horn& a, const Horn& b) { return a.faces < b.faces; });
      std::sort(want.begin(), want.end(), [](const Horn& a, const Horn& b) { return a.faces < b.faces; });
      CHECK(seen == want);
    }
}
