// End-to-end acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "degenforge/demo.hpp"
#include "degenforge/error.hpp"
#include "degenforge/horn.hpp"
#include "degenforge/io.hpp"
#include "degenforge/synthesis.hpp"

using namespace degenforge;

namespace {

struct Criterion {
  std::ostringstream log;
  bool ok = true;
  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "    failed: " << what << "\n";
    }
  }
};

SynthesisInput absolute(const SSetPtr& X) {
  SynthesisInput in;
  in.X = X;
  return in;
}

std::optional<Errc> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct Named {
  std::string name;
  CategoryPresentation C;
};

std::vector<Named> synthesis_fixtures() {
  return {{"Z/2", cyclic_group(2)},
          {"idempotent monoid", idempotent_monoid()},
          {"interval poset", interval_poset()},
          {"Z/3", cyclic_group(3)},
          {"square poset", square_poset()}};
}

std::vector<Named> unital_fixtures() {
  auto out = synthesis_fixtures();
  out.push_back({"J", j_groupoid()});
  out.push_back({"Z/2 x Z/2", product(cyclic_group(2), cyclic_group(2))});
  return out;
}

void end_to_end(Criterion& c) {
  for (const auto& [name, C] : synthesis_fixtures()) {
    const auto nb = nerve(C, 5);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = synthesize(absolute(nb.sset), 5);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.log << "    " << name << ": " << secs << " s\n";
    c.expect(secs < 10.0, name + " under 10 s");
    const auto ch = oracle::enumerate_chains(C, 5);
    std::size_t mismatches = 0;
    for (int n = 0; n <= 3; ++n)
      for (int k = 0; k <= n; ++k)
        for (Index j = 0; j < nb.sset->count(n); ++j)
          if (r.table.get(k, n, j) != oracle::identity_insertion(C, ch, k, n, j)) ++mismatches;
    c.expect(mismatches == 0, name + " equals identity insertion (" + std::to_string(mismatches) + " mismatches)");
  }
}

void identity_suite(Criterion& c) {
  for (const auto& [name, C] : unital_fixtures())
    for (int D = 3; D <= 5; ++D) {
      const auto nb = nerve(C, D);
      const auto r = synthesize(absolute(nb.sset), D);
      const auto rep = verify_simplicial(*nb.sset, r.table, D);
      c.expect(rep.ok(), name + " D=" + std::to_string(D) + " has no violations");
      if (D == 5 && name == "Z/2") {
        c.log << "    Z/2 at D=5: " << rep.checked() << " identity instances\n";
        c.expect(rep.checked() > 100, "more than 100 instances on Z/2 at D=5");
      }
    }
}

void addendum(Criterion& c) {
  for (const auto& [name, C] : std::vector<Named>{{"Z/2", cyclic_group(2)}, {"Z/3", cyclic_group(3)},
                                                  {"Z/2 x Z/2", product(cyclic_group(2), cyclic_group(2))}}) {
    const auto nb = nerve(C, 4);
    const auto a = addendum_s0(*nb.sset, 4);
    for (Index x = 0; x < nb.sset->count(0); ++x) {
      c.expect(a.s0[x] == *C.identity(x), name + " gives the identity");
      c.expect(oracle::brute_idempotent_equivalences(*nb.sset, x, 4) == std::vector<Index>{a.s0[x]},
               name + " agrees with brute force");
    }
    auto in = absolute(nb.sset);
    in.s0 = a.s0;
    in.idempotency_witnesses = a.witnesses;
    c.expect(!code_of([&] { synthesize(in, 4); }), name + " synthesizes from the addendum s0");
  }
}

void negative_control(Criterion& c) {
  for (int n = 1; n <= 3; ++n)
    c.expect(code_of([&] { synthesize(absolute(fx::delta(n, 4)), 4); }) == Errc::NoIdempotentEquivalence,
             "Δ" + std::to_string(n) + " has no idempotent equivalence");
  for (const auto& [name, nb] : {std::pair{"idempotent monoid", fx::NM(3)}, std::pair{"interval poset", fx::NP(3)}}) {
    const auto v = check_kan(*nb.sset, 3);
    c.expect(!v.holds && v.witness.has_value(), std::string(name) + " is not Kan");
    if (v.witness) {
      c.log << "    " << std::string(name) << " witness: " << io::to_json(*v.witness).dump() << "\n";
      c.expect(oracle::naive_compatible(*nb.sset, *v.witness), "witness is compatible");
      c.expect(oracle::naive_fillers(*nb.sset, *v.witness).empty(), "witness has no filler by full scan");
    }
  }
}

void equivalences(Criterion& c) {
  std::size_t total = 0;
  for (const auto& [name, C] : unital_fixtures())
    for (int D = 3; D <= 5; ++D) {
      const auto nb = nerve(C, D);
      for (Index f = 0; f < C.arrows.size(); ++f, ++total)
        c.expect(is_equivalence(*nb.sset, f, D).holds == equivalence_criterion(C, f),
                 name + " arrow " + C.arrows[f].name + " D=" + std::to_string(D));
    }
  c.log << "    " << total << " edge verdicts compared\n";
}

void uniqueness(Criterion& c) {
  const auto nb = fx::N2(5);
  const auto table = synthesize(absolute(nb.sset), 5).table;
  const auto rep = uniqueness_demo(nb.sset, table, table, 5);
  c.expect(rep.success, "demo succeeds");
  c.expect(rep.restriction_ok, "restriction over both J-vertices is exact");
  c.expect(rep.p_compatible, "compatible with the degeneracies of N(J)");
  c.log << "    restriction entries " << rep.restriction_checked << ", projection entries " << rep.projection_checked
        << "\n";
  c.expect(rep.restriction_checked > 0 && rep.projection_checked > 0, "checks were non-vacuous");
}

void pullback_law(Criterion& c) {
  std::size_t compared = 0;
  for (const auto& [name, C] : unital_fixtures())
    for (int D = 2; D <= 5; ++D) {
      const auto nb = nerve(C, D);
      const auto e = code_of([&] { compared += synthesize(absolute(nb.sset), D).stats.representations_compared; });
      c.expect(e != Errc::ConsistencyViolation, name + " D=" + std::to_string(D) + " raises no conflict");
    }
  {
    const auto n2 = fx::N2(5);
    const auto rep = uniqueness_demo(n2.sset, *fx::N2(5).oracle, *fx::N2(5).oracle, 5);
    compared += rep.result.stats.representations_compared;
  }
  c.log << "    " << compared << " multi-representation comparisons\n";
  c.expect(compared > 0, "some forced values had more than one representation");

  // A table on A = X that contradicts the degeneracies forced by s_0.
  const auto nb = fx::N2(4);
  std::vector<std::vector<Index>> all(5);
  for (int n = 0; n <= 4; ++n)
    for (Index j = 0; j < nb.sset->count(n); ++j) all[n].push_back(j);
  SubData sub{Subcomplex(nb.sset, all), nb.oracle->truncated(3)};
  const Index x = fx::chain(nb, {"1", "g"});
  sub.a_deg.set(1, 2, x, fx::chain(nb, {"g", "1", "g"}));
  c.expect(code_of([&] { forced_value(*nb.sset, nb.oracle->truncated(3), &sub, {2, x}, 1); }) ==
               Errc::ConsistencyViolation,
           "a corrupted forced value is detected");
}

void replay(Criterion& c) {
  for (const auto& [name, C] : unital_fixtures())
    for (int D = 3; D <= 5; ++D) {
      const auto nb = nerve(C, D);
      const auto r = synthesize(absolute(nb.sset), D);
      const auto again = replay_certificate(*nb.sset, r.certificate, D);
      c.expect(again == r.table, name + " replays exactly");
      const auto cert = io::certificate_from_json(nlohmann::json::parse(io::to_json(r.certificate).dump()));
      c.expect(replay_certificate(*nb.sset, cert, D) == r.table, name + " replays after serialization");
    }
  const auto nb = fx::N2(5);
  const auto table = synthesize(absolute(nb.sset), 5).table;
  const auto rep = uniqueness_demo(nb.sset, table, table, 5);
  c.expect(replay_certificate(*rep.setup.set, rep.result.certificate, 5) == rep.result.table,
           "relative certificate replays exactly");
}

void brute_force_fillers(Criterion& c) {
  std::mt19937 rng(314159);
  std::vector<SSetPtr> pool;
  for (const auto& [name, C] : unital_fixtures()) pool.push_back(nerve(C, 4).sset);
  pool.push_back(fx::delta(3, 3));
  std::size_t sampled = 0, empty = 0, multiple = 0;
  while (sampled < 100) {
    SSetPtr X = pool[rng() % pool.size()];
    if (rng() % 2) X = Subcomplex(X, oracle::random_members(*X, rng)).induced();
    const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(X->dim(), 4)));
    const int k = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    std::optional<Horn> h;
    if (rng() % 2 && X->count(n) > 0) {
      const Index z = static_cast<Index>(rng() % X->count(n));
      h = Horn(n, k);
      for (int i = 0; i <= n; ++i)
        if (i != k) h->face(i) = X->face(n, z, i);
    } else {
      const auto all = oracle::naive_horns(*X, n, k);
      if (!all.empty()) h = all[rng() % all.size()];
    }
    if (!h) continue;
    ++sampled;
    const auto got = fillers(*X, *h);
    const auto want = oracle::naive_fillers(*X, *h);
    empty += want.empty();
    multiple += want.size() > 1;
    c.expect(got == want, "fillers of " + io::to_json(*h).dump());
  }
  c.log << "    " << sampled << " horns, " << empty << " unfillable, " << multiple << " with several fillers\n";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, void (*)(Criterion&)>> criteria = {
      {"synthesis equals identity insertion on nerves at D=5", end_to_end},
      {"simplicial identities hold on every synthesized table", identity_suite},
      {"addendum s0 on group nerves is the identity", addendum},
      {"negative controls: simplices and non-Kan nerves", negative_control},
      {"is_equivalence agrees with the bijectivity criterion", equivalences},
      {"uniqueness demo on Z/2 at D=5", uniqueness},
      {"forced values never conflict; corruption is detected", pullback_law},
      {"certificate replay is bit-exact", replay},
      {"fillers equal a naive scan on 100 random horns", brute_force_fillers},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "    exception: " << e.what() << "\n";
    }
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << i + 1 << ". " << criteria[i].first << "\n" << c.log.str();
    failures += !c.ok;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
