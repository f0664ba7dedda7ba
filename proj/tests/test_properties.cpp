// Randomized and exhaustive property checks against the brute-force oracles.

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

#include "degenforge/error.hpp"
#include "degenforge/horn.hpp"
#include "degenforge/synthesis.hpp"

using namespace degenforge;

namespace {

std::vector<NerveBundle> small_nerves(int D) {
  return {fx::N2(D), fx::N3(D), fx::NM(D), fx::NP(D), fx::NJ(D), fx::NSq(D)};
}

}  // namespace

TEST_CASE("random subcomplexes of nerves are valid sets and fillers match the full scan") {
  std::mt19937 rng(20240611);
  for (int round = 0; round < 4; ++round)
    for (const auto& nb : small_nerves(3)) {
      const Subcomplex A(nb.sset, oracle::random_members(*nb.sset, rng));
      REQUIRE(A.is_closed());
      const auto X = A.induced();
      CHECK(validate(*X).ok());
      CHECK(validate_map(A.inclusion()).ok());
      for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n; ++k)
          for (const Horn& h : oracle::naive_horns(*X, n, k)) CHECK(fillers(*X, h) == oracle::naive_fillers(*X, h));
    }
}

TEST_CASE("product of valid sets is valid") {
  std::mt19937 rng(7);
  const auto sets = small_nerves(3);
  for (int round = 0; round < 10; ++round) {
    const auto& a = sets[rng() % sets.size()];
    const auto& b = sets[rng() % sets.size()];
    const Subcomplex A(a.sset, oracle::random_members(*a.sset, rng));
    const auto P = product(A.induced(), b.sset);
    CHECK(validate(*P.set).ok());
    CHECK(validate_map(P.first).ok());
    CHECK(validate_map(P.second).ok());
    for (int n = 0; n <= 3; ++n) CHECK(P.set->count(n) == A.induced()->count(n) * b.sset->count(n));
  }
}

TEST_CASE("every compatible inner horn of a nerve has exactly one filler") {
  for (const auto& nb : small_nerves(4))
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k < n; ++k)
        for_each_horn(*nb.sset, n, k, [&](const Horn& h) {
          CHECK(oracle::naive_fillers(*nb.sset, h).size() == 1);
          return true;
        });
}

TEST_CASE("check_inner and check_kan agree with exhaustive enumeration on random subcomplexes") {
  std::mt19937 rng(99);
  for (int round = 0; round < 6; ++round)
    for (const auto& nb : small_nerves(3)) {
      const auto X = Subcomplex(nb.sset, oracle::random_members(*nb.sset, rng)).induced();
      auto brute = [&](bool inner) {
        for (int n = 1; n <= 3; ++n)
          for (int k = 0; k <= n; ++k) {
            if (inner && (k == 0 || k == n)) continue;
            for (const Horn& h : oracle::naive_horns(*X, n, k))
              if (oracle::naive_fillers(*X, h).empty()) return false;
          }
        return true;
      };
      const auto in = check_inner(*X, 3);
      CHECK(in.holds == brute(true));
      if (!in.holds) CHECK(oracle::naive_fillers(*X, *in.witness).empty());
      const auto kan = check_kan(*X, 3);
      CHECK(kan.holds == brute(false));
      if (!kan.holds) CHECK(oracle::naive_fillers(*X, *kan.witness).empty());
    }
}

TEST_CASE("find_idempotent_equivalences matches the brute-force search") {
  for (const auto& nb : small_nerves(3))
    for (Index x = 0; x < nb.sset->count(0); ++x) {
      std::vector<Index> got;
      for (const auto& ie : find_idempotent_equivalences(*nb.sset, x, 3)) got.push_back(ie.edge);
      CHECK(got == oracle::brute_idempotent_equivalences(*nb.sset, x, 3));
    }
}

TEST_CASE("synthesis on nerves always equals identity insertion, and forcing never conflicts") {
  for (const auto& C : {cyclic_group(2), cyclic_group(3), idempotent_monoid(), interval_poset(), square_poset(),
                        j_groupoid(), product(cyclic_group(2), cyclic_group(2))})
    for (int D = 2; D <= 5; ++D) {
      const auto nb = nerve(C, D);
      const auto ch = oracle::enumerate_chains(C, D);
      SynthesisInput in;
      in.X = nb.sset;
      SynthesisResult r;
      REQUIRE_NOTHROW(r = synthesize(in, D));
      for (int n = 0; n <= D - 2; ++n)
        for (int k = 0; k <= n; ++k)
          for (Index j = 0; j < nb.sset->count(n); ++j)
            CHECK(r.table.get(k, n, j) == oracle::identity_insertion(C, ch, k, n, j));
    }
}

TEST_CASE("verdicts and witnesses do not depend on the thread count") {
  std::mt19937 rng(4242);
  for (int round = 0; round < 3; ++round)
    for (const auto& nb : small_nerves(3)) {
      const auto X = Subcomplex(nb.sset, oracle::random_members(*nb.sset, rng)).induced();
      const auto a = check_kan(*X, 3, 1), b = check_kan(*X, 3, 4);
      CHECK(a.holds == b.holds);
      CHECK(a.witness == b.witness);
      const auto c = check_inner(*X, 3, 1), d = check_inner(*X, 3, 0);
      CHECK(c.holds == d.holds);
      CHECK(c.witness == d.witness);
    }
  for (unsigned t : {1u, 3u, 8u}) {
    SynthesisInput in;
    in.X = fx::NSq(5).sset;
    in.threads = t;
    static const auto reference = synthesize(in, 5);
    const auto r = synthesize(in, 5);
    CHECK(r.table == reference.table);
    CHECK(r.certificate == reference.certificate);
  }
}

TEST_CASE("negative edge verdicts persist as the bound grows") {
  std::mt19937 rng(1729);
  for (int round = 0; round < 4; ++round)
    for (const auto& nb : small_nerves(5)) {
      const auto X = Subcomplex(nb.sset, oracle::random_members(*nb.sset, rng)).induced();
      for (Index f = 0; f < X->count(1); ++f) {
        if (X->face(1, f, 0) != X->face(1, f, 1)) continue;
        for (EdgeProperty p : {EdgeProperty::Cartesian, EdgeProperty::Cocartesian})
          for (int D = 2; D < X->dim(); ++D) {
            const auto v = edge_property(*X, f, p, D);
            if (v.holds) continue;
            CHECK_FALSE(edge_property(*X, f, p, D + 1).holds);
            CHECK(oracle::naive_fillers(*X, *v.horn).empty());
          }
        for (int D = 3; D < X->dim(); ++D)
          if (!is_equivalence(*X, f, D).holds) CHECK_FALSE(is_equivalence(*X, f, D + 1).holds);
      }
    }
}
