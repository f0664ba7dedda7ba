#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"

#include "degenforge/error.hpp"
#include "degenforge/sset.hpp"

using namespace degenforge;

TEST_CASE("standard 2-simplex validates") {
  const auto X = standard_simplex(2, 2);
  CHECK(X.cells() == std::vector<std::size_t>{3, 3, 1});
  const auto r = validate(X);
  CHECK(r.ok());
  CHECK(r.checked == 3);
}

TEST_CASE("swapping d0 and d2 of the 2-simplex is caught at (2, 0, 0, 2)") {
  const auto X = standard_simplex(2, 2);
  auto faces = std::vector<std::vector<Index>>{{}, X.face_table(1), X.face_table(2)};
  std::swap(faces[2][0], faces[2][2]);
  const SemisimplicialSet bad(X.cells(), faces);
  const auto r = validate(bad);
  REQUIRE_FALSE(r.ok());
  const FaceViolation want{FaceViolation::Kind::Identity, 2, 0, 0, 2};
  CHECK(std::find(r.violations.begin(), r.violations.end(), want) != r.violations.end());
}

TEST_CASE("out-of-range faces are violations, not crashes") {
  const SemisimplicialSet bad({1, 1}, {{}, {0, 5}});
  const auto r = validate(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.violations.front().kind == FaceViolation::Kind::OutOfRange);
  CHECK(r.violations.front().i == 1);
}

TEST_CASE("malformed face tables are rejected at construction") {
  CHECK_THROWS_AS(SemisimplicialSet({1, 1}, {{}, {0}}), Error);
  CHECK_THROWS_AS(SemisimplicialSet({1}, {{0}}), Error);
}

TEST_CASE("N2 truncated at 4 validates") {
  const auto nb = fx::N2(4);
  CHECK(validate(*nb.sset).ok());
}

TEST_CASE("every fixture nerve validates up to 6") {
  for (const auto& C : {cyclic_group(2), cyclic_group(3), idempotent_monoid(), interval_poset(), square_poset(),
                        j_groupoid(), free_arrow(), product(cyclic_group(2), cyclic_group(2))}) {
    const auto nb = nerve(C, 6);
    CHECK(validate(*nb.sset).ok());
  }
}

TEST_CASE("last and first edges") {
  const auto nb = fx::N2(3);
  const auto& X = *nb.sset;
  const Index g = fx::arrow(nb, "g");
  CHECK(last_edge(X, {1, g}) == SimplexRef{1, g});
  CHECK(first_edge(X, {1, g}) == SimplexRef{1, g});
  CHECK(last_edge(X, {2, fx::chain(nb, {"g", "g"})}) == SimplexRef{1, g});
  CHECK(first_edge(X, {2, fx::chain(nb, {"1", "g"})}) == SimplexRef{1, fx::arrow(nb, "1")});

  const auto D3 = standard_simplex(3, 3);
  // edges of Δ³ in lexicographic order: 01 02 03 12 13 23
  CHECK(last_edge(D3, {3, 0}) == SimplexRef{1, 5});
  CHECK(first_edge(D3, {3, 0}) == SimplexRef{1, 0});
  CHECK_THROWS_AS(last_edge(D3, {0, 0}), Error);
  try {
    first_edge(D3, {0, 1});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionTooLow);
  }
}

TEST_CASE("last_edge of first_edge is the identity on edges") {
  const auto nb = fx::NJ(3);
  for (Index e = 0; e < nb.sset->count(1); ++e) {
    const auto f = first_edge(*nb.sset, {1, e});
    CHECK(last_edge(*nb.sset, f) == SimplexRef{1, e});
  }
}

TEST_CASE("products") {
  const auto n2 = fx::N2(4).sset;
  const auto unit = product(n2, share(terminal_set(4)));
  CHECK(*unit.set == *n2);

  const auto nj = fx::NJ(4).sset;
  const auto pj = product(n2, nj);
  CHECK(pj.set->count(1) == 8);
  CHECK(validate(*pj.set).ok());
  CHECK(validate_map(pj.first).ok());
  CHECK(validate_map(pj.second).ok());

  const auto point = product(share(standard_simplex(0, 0)), share(standard_simplex(0, 0)));
  CHECK(*point.set == standard_simplex(0, 0));

  // truncation is the smaller of the two
  const auto mixed = product(fx::N2(2).sset, nj);
  CHECK(mixed.set->dim() == 2);
}

TEST_CASE("maps") {
  const auto nb = fx::N2(3);
  CHECK(validate_map(identity_map(nb.sset)).ok());
  CHECK(validate_map(terminal_map(nb.sset)).ok());

  // g -> 1 on edges, identity elsewhere
  auto F = identity_map(nb.sset);
  F.levels[1][fx::arrow(nb, "g")] = fx::arrow(nb, "1");
  const auto r = validate_map(F);
  REQUIRE_FALSE(r.ok());
  for (const auto& v : r.violations) CHECK(v.n == 2);
  const Index gg = fx::chain(nb, {"g", "g"});
  CHECK(std::any_of(r.violations.begin(), r.violations.end(), [&](const MapViolation& v) { return v.j == gg; }));
}

TEST_CASE("subcomplexes") {
  const auto nb = fx::NP(3);
  const auto& X = nb.sset;
  // the chains over object 0 only: vertex 0 and its identity chains
  const Index id0 = fx::arrow(nb, "id0");
  std::vector<std::vector<Index>> members(4);
  members[0] = {0};
  for (int n = 1; n <= 3; ++n) members[n] = {nb.index_of(n, std::vector<Index>(n, id0))};
  const Subcomplex A(X, members);
  CHECK(A.is_closed());
  CHECK(A.contains(1, id0));
  CHECK_FALSE(A.contains(0, 1));
  CHECK(*A.local_index(1, id0) == 0);
  const auto induced = A.induced();
  CHECK(induced->cells() == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(validate(*induced).ok());
  CHECK(validate_map(A.inclusion()).ok());

  members[1].push_back(fx::arrow(nb, "0->1"));
  const Subcomplex open(X, members);
  CHECK_FALSE(open.is_closed());
  CHECK(open.first_unclosed()->dim == 1);
}

TEST_CASE("empty sets are valid inputs") {
  const auto E = empty_set(3);
  CHECK(E.count(0) == 0);
  CHECK(validate(E).ok());
  CHECK(validate(SemisimplicialSet()).ok());
}

TEST_CASE("content hash is stable and sensitive") {
  const auto a = fx::N2(3).sset;
  const auto b = fx::N2(3).sset;
  CHECK(content_hash(*a) == content_hash(*b));
  CHECK(content_hash(*a).size() == 16);
  CHECK(content_hash(*a) != content_hash(*fx::NM(3).sset));
}

TEST_CASE("cofaces list exactly the simplices with the given face") {
  const auto nb = fx::NJ(3);
  const auto& X = *nb.sset;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i <= n; ++i)
      for (Index f = 0; f < X.count(n - 1); ++f) {
        std::vector<Index> want;
        for (Index z = 0; z < X.count(n); ++z)
          if (X.face(n, z, i) == f) want.push_back(z);
        const auto got = X.cofaces(n, i, f);
        CHECK(std::vector<Index>(got.begin(), got.end()) == want);
      }
}
