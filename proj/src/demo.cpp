#include "degenforge/demo.hpp"

#include <algorithm>

#include "degenforge/error.hpp"
#include "degenforge/nerve.hpp"

namespace degenforge {

namespace {

// The chain of n identities at object j (the object itself for n = 0).
Index constant_chain(const NerveBundle& J, int n, Index j) {
  if (n == 0) return J.index_of(0, {j});
  const Index id = *J.category.identity(j);
  return J.index_of(n, std::vector<Index>(static_cast<std::size_t>(n), id));
}

}  // namespace

DemoReport uniqueness_demo(const SSetPtr& C, const DegeneracyTable& deg0, const DegeneracyTable& deg1, int D,
                           unsigned threads) {
  if (D > C->dim()) throw Error(Errc::InvalidInput, "bound exceeds the truncation of C");
  for (const DegeneracyTable* t : {&deg0, &deg1}) {
    if (t->bound() > D - 1) throw Error(Errc::PreconditionFailed, "structure on C reaches above the bound");
    const auto report = verify_simplicial(*C, *t, D);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      throw Error(Errc::PreconditionFailed,
                  std::string(t == &deg0 ? "deg0" : "deg1") + " violates the " + v.family + " identity",
                  ErrorSite{v.n, v.j});
    }
  }
  const int B = std::min(deg0.bound(), deg1.bound());

  const NerveBundle J = nerve(j_groupoid(), D);
  const SSetPtr Cd = C->dim() == D ? C : share(C->truncated(D));
  DemoReport out;
  out.setup = product(Cd, J.sset);
  const ProductSet& X = out.setup;
  const DegeneracyTable* deg[2] = {&deg0, &deg1};

  std::vector<std::vector<Index>> members(static_cast<std::size_t>(D + 1));
  for (int n = 0; n <= D; ++n)
    for (Index j = 0; j < 2; ++j)
      for (Index c = 0; c < Cd->count(n); ++c) members[n].push_back(X.pair(n, c, constant_chain(J, n, j)));

  SubData sub{Subcomplex(X.set, std::move(members)), {}};
  const SSetPtr A = sub.sub.induced();
  sub.a_deg = DegeneracyTable(*A, B);
  for (int n = 0; n <= B; ++n)
    for (int k = 0; k <= n; ++k)
      for (Index j = 0; j < 2; ++j)
        for (Index c = 0; c < Cd->count(n); ++c) {
          const Index a = *sub.sub.local_index(n, X.pair(n, c, constant_chain(J, n, j)));
          const Index up = X.pair(n + 1, deg[j]->get(k, n, c), constant_chain(J, n + 1, j));
          sub.a_deg.set(k, n, a, *sub.sub.local_index(n + 1, up));
        }

  SynthesisInput in;
  in.X = X.set;
  in.mode = Mode::Relative;
  in.base = BaseData{X.second, *J.oracle};
  in.sub = std::move(sub);
  in.threads = threads;
  out.result = synthesize_relative(in, D);

  const DegeneracyTable& t = out.result.table;
  out.restriction_ok = true;
  const int top = std::min(B, t.bound());
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= n; ++k)
      for (Index j = 0; j < 2; ++j)
        for (Index c = 0; c < Cd->count(n); ++c) {
          ++out.restriction_checked;
          const Index got = t.get(k, n, X.pair(n, c, constant_chain(J, n, j)));
          const Index want = X.pair(n + 1, deg[j]->get(k, n, c), constant_chain(J, n + 1, j));
          if (got != want)
            throw Error(Errc::RestrictionMismatch,
                        "s_" + std::to_string(k) + " over " + std::to_string(j) + " differs from the given structure",
                        ErrorSite{n, c});
        }

  const auto report = verify_simplicial(*X.set, t, D, nullptr, &*in.base);
  out.projection_checked = report.projection;
  out.p_compatible = report.ok();
  out.success = out.restriction_ok && out.p_compatible;
  return out;
}

}  // namespace degenforge
