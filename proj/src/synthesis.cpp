#include "degenforge/synthesis.hpp"

#include <algorithm>

#include "degenforge/error.hpp"

namespace degenforge {

namespace {

std::size_t level(int n) { return static_cast<std::size_t>(n); }

std::string at(int n, Index j) { return "(" + std::to_string(n) + ", " + std::to_string(j) + ")"; }

[[noreturn]] void fail(Errc code, const std::string& what, int n, Index j) { throw Error(code, what, ErrorSite{n, j}); }

// Inverse images of the (injective) maps s_i, i < max_k, read off a table.
class Preimages {
 public:
  Preimages(const SemisimplicialSet& X, const DegeneracyTable& t, int max_k) : max_k_(max_k) {
    inv_.resize(level(t.bound() + 2));
    for (int m = 0; m <= t.bound(); ++m) {
      auto& slot = inv_[level(m + 1)];
      slot.resize(level(std::min(m + 1, max_k)));
      for (int i = 0; i < static_cast<int>(slot.size()); ++i) {
        slot[level(i)].assign(X.count(m + 1), kUnset);
        for (Index y = 0; y < X.count(m); ++y) {
          const Index z = t.get(i, m, y);
          if (z == kUnset) continue;
          Index& pre = slot[level(i)][z];
          if (pre != kUnset && pre != y)
            fail(Errc::ConsistencyViolation, "s_" + std::to_string(i) + " is not injective on level " + std::to_string(m),
                 m + 1, z);
          pre = y;
        }
      }
    }
  }

  /// Representations x = s_i(y) with i < max_k.
  std::vector<std::pair<int, Index>> reps(int n, Index x) const {
    std::vector<std::pair<int, Index>> out;
    if (n < 1 || n >= static_cast<int>(inv_.size())) return out;
    const auto& slot = inv_[level(n)];
    for (int i = 0; i < static_cast<int>(slot.size()) && i < max_k_; ++i)
      if (slot[level(i)][x] != kUnset) out.emplace_back(i, slot[level(i)][x]);
    return out;
  }

 private:
  int max_k_;
  std::vector<std::vector<std::vector<Index>>> inv_;  // [image level][i][z] -> y
};

bool fills(const SemisimplicialSet& X, const Horn& h, Index z) {
  if (z >= X.count(h.n)) return false;
  for (int i = 0; i <= h.n; ++i)
    if (i != h.k && X.face(h.n, z, i) != h.face(i)) return false;
  return true;
}

std::string describe(const Horn& h) {
  std::string s = "Λ^" + std::to_string(h.n) + "_" + std::to_string(h.k) + " {";
  bool first = true;
  for (int i = 0; i <= h.n; ++i) {
    if (i == h.k) continue;
    s += (first ? "" : ", ") + std::to_string(i) + ": " + std::to_string(h.face(i));
    first = false;
  }
  return s + "}";
}

Index need(Index v, const std::string& what, int n, Index j) {
  if (v == kUnset) fail(Errc::ConsistencyViolation, what + " is undefined", n, j);
  return v;
}

// Faces s_{N-1} d_i x (i < N), x (i = N), s_N d_{i-1} x (i > N+1).
Horn step1_horn(const SemisimplicialSet& X, const DegeneracyTable& t, int N, int n, Index x) {
  Horn h(n + 1, N + 1);
  for (int i = 0; i <= n + 1; ++i) {
    if (i < N) {
      h.face(i) = need(t.get(N - 1, n - 1, X.face(n, x, i)), "s_{N-1} d_i x", n, x);
    } else if (i == N) {
      h.face(i) = x;
    } else if (i > N + 1) {
      h.face(i) = need(t.get(N, n - 1, X.face(n, x, i - 1)), "s_N d_{i-1} x", n, x);
    }
  }
  return h;
}

// Faces s_{N-1}² d_i x (i < N), s_N x (i = N+1, N+2), T_N d_{i-2} x (i > N+2).
Horn step2_horn(const SemisimplicialSet& X, const DegeneracyTable& t, const TTable& T, int N, int n, Index x) {
  Horn h(n + 2, N);
  for (int i = 0; i <= n + 2; ++i) {
    if (i < N) {
      const Index once = need(t.get(N - 1, n - 1, X.face(n, x, i)), "s_{N-1} d_i x", n, x);
      h.face(i) = need(t.get(N - 1, n, once), "s_{N-1}² d_i x", n, x);
    } else if (i == N + 1 || i == N + 2) {
      h.face(i) = need(t.get(N, n, x), "s_N x", n, x);
    } else if (i > N + 2) {
      h.face(i) = need(T.get(n - 1, X.face(n, x, i - 2)), "T_N d_{i-2} x", n, x);
    }
  }
  return h;
}

TTable fresh_t(const SemisimplicialSet& X, int N, int top) {
  TTable T;
  T.N = N;
  for (int n = 0; n <= top; ++n) T.T.emplace_back(X.count(n), kUnset);
  return T;
}

struct Context {
  const SemisimplicialSet& X;
  int D;
  const BaseData* base = nullptr;
  const SubData* sub = nullptr;
  const std::vector<Index>* s0 = nullptr;
  const std::vector<Index>* witnesses = nullptr;
  Certificate* cert = nullptr;
  SynthesisStats* stats = nullptr;

  void record(CertificateRecord r) const {
    if (stats) {
      if (r.kind == CertificateRecord::Kind::Filled) ++stats->filled;
      if (r.kind == CertificateRecord::Kind::Forced) ++stats->forced;
      if (r.kind == CertificateRecord::Kind::Witness) ++stats->witnesses;
    }
    if (cert) cert->push_back(std::move(r));
  }

  /// Ambient index of f s_k(x') for x = f(x'), or kUnset if x is not in A or
  /// A's table does not reach (k, n).
  Index sub_degeneracy(int k, int n, Index x) const {
    if (!sub) return kUnset;
    const auto local = sub->sub.local_index(n, x);
    if (!local) return kUnset;
    const Index v = sub->a_deg.get(k, n, *local);
    if (v == kUnset) return kUnset;
    const auto& members = sub->sub.members();
    if (n + 1 >= static_cast<int>(members.size()) || v >= members[static_cast<std::size_t>(n + 1)].size())
      throw Error(Errc::InvalidInput, "degeneracy of A leaves A", ErrorSite{n, x});
    return sub->sub.ambient_index(n + 1, v);
  }
  bool in_sub(int n, Index x) const { return sub && sub->sub.contains(n, x); }

  Index base_image(int n, Index x) const { return base->p(n, x); }
  Index base_degeneracy(int k, int n, Index y) const { return base->y_deg.get(k, n, y); }

  /// Canonical filler, or lift over `y` in the relative case.
  std::vector<Index> candidates(const Horn& h, Index y) const {
    return base ? lifts(base->p, h, y) : fillers(X, h);
  }

  /// A-image first, then degenerate simplices, then the rest; each ascending.
  std::vector<Index> order(int n, const Preimages& pre) const {
    std::vector<Index> first, second, rest;
    for (Index x = 0; x < X.count(n); ++x) {
      if (in_sub(n, x))
        first.push_back(x);
      else if (!pre.reps(n, x).empty())
        second.push_back(x);
      else
        rest.push_back(x);
    }
    first.insert(first.end(), second.begin(), second.end());
    first.insert(first.end(), rest.begin(), rest.end());
    return first;
  }
};

struct Forced {
  Index value = kUnset;
  bool from_sub = false;
};

Forced force_s(const Context& ctx, const DegeneracyTable& t, const Preimages& pre, int N, int n, Index x) {
  Forced out;
  int sources = 0;
  if (ctx.in_sub(n, x)) {
    out.value = ctx.sub_degeneracy(N, n, x);
    if (out.value == kUnset)
      fail(Errc::IncompatibleSubcomplexStructure, "A carries no s_" + std::to_string(N) + " at " + at(n, x), n, x);
    out.from_sub = true;
    ++sources;
  }
  for (auto [i, y] : pre.reps(n, x)) {
    const Index mid = need(t.get(N - 1, n - 1, y), "s_{N-1} y", n, x);
    const Index v = need(t.get(i, n, mid), "s_i s_{N-1} y", n, x);
    ++sources;
    if (out.value == kUnset) {
      out.value = v;
    } else if (out.value != v) {
      fail(Errc::ConsistencyViolation,
           "representations of " + at(n, x) + " force s_" + std::to_string(N) + " to both " +
               std::to_string(out.value) + " and " + std::to_string(v) + " (via s_" + std::to_string(i) + ")",
           n, x);
    }
  }
  if (sources > 1 && ctx.stats) ++ctx.stats->representations_compared;
  return out;
}

void run_step1(const Context& ctx, DegeneracyTable& t, int N) {
  const SemisimplicialSet& X = ctx.X;
  const int top = ctx.D - 2;
  if (N > top)
    throw Error(Errc::TruncationExhausted, "stage " + std::to_string(N) + " needs D >= " + std::to_string(N + 2));
  const Preimages pre(X, t, N);
  for (int n = N; n <= top; ++n) {
    for (Index x : ctx.order(n, pre)) {
      CertificateRecord rec{N, 1, n, x, CertificateRecord::Kind::Forced, CertificateRecord::Target::S, kUnset, {}};
      if (N == 0 && n == 0) {
        if (!ctx.s0) throw Error(Errc::PreconditionFailed, "stage 0 needs s_0 on vertices");
        rec.value = (*ctx.s0)[x];
        // base horn Λ¹₁ with x_0 = x
        if (X.cofaces(1, 0, x).empty()) fail(Errc::UnfillableHorn, "no edge ends at vertex " + std::to_string(x), 0, x);
        if (rec.value >= X.count(1) || X.face(1, rec.value, 0) != x || X.face(1, rec.value, 1) != x)
          fail(Errc::PreconditionFailed, "s0 of vertex " + std::to_string(x) + " is not a self-edge at it", 0, x);
        t.set(0, 0, x, rec.value);
        ctx.record(std::move(rec));
        continue;
      }
      const Horn h = step1_horn(X, t, N, n, x);
      if (auto bad = incompatibility(X, h))
        fail(Errc::ConsistencyViolation, "step-1 horn " + describe(h) + " is not compatible", n, x);
      const Index over = ctx.base ? ctx.base_degeneracy(N, n, ctx.base_image(n, x)) : kUnset;
      const Forced forced = force_s(ctx, t, pre, N, n, x);
      if (forced.value != kUnset) {
        const bool ok = fills(X, h, forced.value) && (!ctx.base || ctx.base_image(n + 1, forced.value) == over);
        if (!ok)
          fail(forced.from_sub ? Errc::IncompatibleSubcomplexStructure : Errc::ConsistencyViolation,
               "forced s_" + std::to_string(N) + at(n, x) + " = " + std::to_string(forced.value) +
                   " does not fill " + describe(h),
               n, x);
        rec.value = forced.value;
      } else {
        const auto cands = ctx.candidates(h, over);
        if (cands.empty())
          fail(Errc::UnfillableHorn,
               "no filler for " + describe(h) + " defining s_" + std::to_string(N) + at(n, x), n, x);
        rec.kind = CertificateRecord::Kind::Filled;
        rec.value = cands.front();
        rec.horn = h;
      }
      t.set(N, n, x, rec.value);
      ctx.record(std::move(rec));
    }
  }
}

Index find_witness(const Context& ctx, const DegeneracyTable& t, Index x) {
  const Index f = t.get(0, 0, x);
  if (ctx.witnesses) return (*ctx.witnesses)[x];
  if (ctx.base) {
    const auto v = p_edge_property(ctx.base->p, f, EdgeProperty::Idempotent, ctx.D, &ctx.base->y_deg);
    return v.two_simplex.value_or(kUnset);
  }
  return is_idempotent(ctx.X, f).value_or(kUnset);
}

TTable run_step2(const Context& ctx, const DegeneracyTable& almost, DegeneracyTable& out, int N) {
  const SemisimplicialSet& X = ctx.X;
  const int top = ctx.D - 2;
  TTable T = fresh_t(X, N, top);
  const Preimages pre(X, almost, N);
  for (int n = N; n <= top; ++n) {
    for (Index x : ctx.order(n, pre)) {
      CertificateRecord rec{N, 2, n, x, CertificateRecord::Kind::Forced, CertificateRecord::Target::T, kUnset, {}};
      const Index over =
          ctx.base ? ctx.base_degeneracy(N, n + 1, ctx.base_degeneracy(N, n, ctx.base_image(n, x))) : kUnset;

      bool forced = false;
      bool from_sub = false;
      Index forced_t = kUnset;
      if (ctx.in_sub(n, x)) {
        forced = from_sub = true;
        const Index once = ctx.sub_degeneracy(N, n, x);
        if (once == kUnset)
          fail(Errc::IncompatibleSubcomplexStructure, "A carries no s_" + std::to_string(N) + " at " + at(n, x), n, x);
        forced_t = ctx.sub_degeneracy(N, n + 1, once);
      }
      const auto reps = pre.reps(n, x);
      if (!reps.empty()) {
        forced = true;
        if (n + 1 <= almost.bound()) {
          // T_N s_i = s_N² s_i, cross-checked against s_i s_{N-1}² y for every representation.
          const Index via_n = need(almost.get(N, n + 1, need(almost.get(N, n, x), "s_N x", n, x)), "s_N² x", n, x);
          for (auto [i, y] : reps) {
            const Index a = need(almost.get(N - 1, n - 1, y), "s_{N-1} y", n, x);
            const Index b = need(almost.get(N - 1, n, a), "s_{N-1}² y", n, x);
            const Index v = need(almost.get(i, n + 1, b), "s_i s_{N-1}² y", n, x);
            if (v != via_n)
              fail(Errc::ConsistencyViolation,
                   "T_" + std::to_string(N) + at(n, x) + ": s_N² x = " + std::to_string(via_n) + " but s_" +
                       std::to_string(i) + " s_{N-1}² y = " + std::to_string(v),
                   n, x);
          }
          if (forced_t != kUnset && forced_t != via_n)
            fail(Errc::ConsistencyViolation,
                 "T_" + std::to_string(N) + at(n, x) + " forced to both " + std::to_string(forced_t) + " (A) and " +
                     std::to_string(via_n) + " (degenerate)",
                 n, x);
          forced_t = via_n;
          if (ctx.stats && (from_sub || reps.size() > 1)) ++ctx.stats->representations_compared;
        }
      }

      if (N == 0 && n == 0 && !forced) {
        const Index s = almost.get(0, 0, x);
        const Index w = find_witness(ctx, almost, x);
        if (w == kUnset) fail(Errc::MissingWitness, "no idempotency witness for s_0 of vertex " + std::to_string(x), 0, x);
        const bool ok = w < X.count(2) && X.face(2, w, 0) == s && X.face(2, w, 1) == s && X.face(2, w, 2) == s &&
                        (!ctx.base || ctx.base_image(2, w) == over);
        if (!ok)
          fail(Errc::PreconditionFailed, "2-simplex " + std::to_string(w) + " does not witness idempotence of s_0(" +
                                             std::to_string(x) + ")",
               0, x);
        rec.kind = CertificateRecord::Kind::Witness;
        rec.value = w;
      } else if (forced) {
        if (forced_t != kUnset) {
          const Horn h = step2_horn(X, almost, T, N, n, x);
          const bool ok = fills(X, h, forced_t) && (!ctx.base || ctx.base_image(n + 2, forced_t) == over);
          if (!ok)
            fail(from_sub ? Errc::IncompatibleSubcomplexStructure : Errc::ConsistencyViolation,
                 "forced T_" + std::to_string(N) + at(n, x) + " = " + std::to_string(forced_t) + " does not fill " +
                     describe(h),
                 n, x);
          rec.value = forced_t;
        } else {
          // No headroom for T_N here; the corrected value equals the forced s_N.
          rec.target = CertificateRecord::Target::Sigma;
          rec.value = need(almost.get(N, n, x), "s_N x", n, x);
        }
      } else {
        const Horn h = step2_horn(X, almost, T, N, n, x);
        if (auto bad = incompatibility(X, h))
          fail(Errc::ConsistencyViolation, "step-2 horn " + describe(h) + " is not compatible", n, x);
        const auto cands = ctx.candidates(h, over);
        if (cands.empty())
          fail(Errc::UnfillableHorn, "no filler for " + describe(h) + " defining T_" + std::to_string(N) + at(n, x), n,
               x);
        rec.kind = CertificateRecord::Kind::Filled;
        rec.value = cands.front();
        rec.horn = h;
      }

      if (rec.target == CertificateRecord::Target::T) {
        T.T[level(n)][x] = rec.value;
        out.set(N, n, x, X.face(n + 2, rec.value, N));
      } else {
        out.set(N, n, x, rec.value);
      }
      ctx.record(std::move(rec));
    }
  }
  return T;
}

// ---------------------------------------------------------------------------
// Preconditions

bool complete_levels(const DegeneracyTable& t, int top) {
  if (t.bound() < top) return false;
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= n; ++k)
      if (!t.complete(k, n)) return false;
  return true;
}

void require_valid(const SemisimplicialSet& X, const char* what) {
  const auto report = validate(X);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(Errc::PreconditionFailed, std::string(what) + " violates the face identities", ErrorSite{v.n, v.j});
  }
}

void require_bound(const SemisimplicialSet& X, int D) {
  if (D < 2) throw Error(Errc::TruncationExhausted, "synthesis needs D >= 2");
  if (D > X.dim()) throw Error(Errc::InvalidInput, "bound exceeds the truncation of X");
}

void require_self_edge(const SemisimplicialSet& X, Index x, Index f) {
  if (f >= X.count(1) || X.face(1, f, 0) != x || X.face(1, f, 1) != x)
    throw Error(Errc::PreconditionFailed, "s0 of vertex " + std::to_string(x) + " is not a self-edge at it",
                ErrorSite{0, x});
}

struct Resolved {
  std::vector<Index> s0;
  std::optional<std::vector<Index>> witnesses;
};

Resolved resolve_absolute(const SynthesisInput& in, int D) {
  const SemisimplicialSet& X = *in.X;
  Resolved r;
  if (in.s0) {
    if (in.s0->size() != X.count(0)) throw Error(Errc::InvalidInput, "s0 needs one edge per vertex");
    for (Index x = 0; x < X.count(0); ++x) {
      const Index f = (*in.s0)[x];
      require_self_edge(X, x, f);
      if (!is_idempotent(X, f))
        throw Error(Errc::PreconditionFailed, "s0(" + std::to_string(x) + ") is not idempotent", ErrorSite{0, x});
      if (!is_equivalence(X, f, D, in.threads).holds)
        throw Error(Errc::PreconditionFailed, "s0(" + std::to_string(x) + ") is not an equivalence up to " +
                                                  std::to_string(D),
                    ErrorSite{0, x});
    }
    r.s0 = *in.s0;
    r.witnesses = in.idempotency_witnesses;
    return r;
  }
  std::vector<Index> witnesses;
  for (Index x = 0; x < X.count(0); ++x) {
    std::optional<IdempotentEquivalence> pick;
    for (Index f : X.cofaces(1, 0, x)) {
      if (X.face(1, f, 1) != x) continue;
      const auto w = is_idempotent(X, f);
      if (w && is_equivalence(X, f, D, in.threads).holds) {
        pick = IdempotentEquivalence{f, *w};
        break;
      }
    }
    if (!pick)
      throw Error(Errc::NoIdempotentEquivalence, "no idempotent equivalence at vertex " + std::to_string(x),
                  ErrorSite{0, x});
    r.s0.push_back(pick->edge);
    witnesses.push_back(pick->witness);
  }
  r.witnesses = in.idempotency_witnesses ? in.idempotency_witnesses : std::optional(witnesses);
  return r;
}

bool relative_edge_ok(const BaseData& base, Index f, int D, unsigned threads, Index* witness) {
  const auto idem = p_edge_property(base.p, f, EdgeProperty::Idempotent, D, &base.y_deg, threads);
  if (!idem.holds) return false;
  if (witness) *witness = *idem.two_simplex;
  return p_edge_property(base.p, f, EdgeProperty::Cartesian, D, nullptr, threads).holds &&
         p_edge_property(base.p, f, EdgeProperty::Cocartesian, D, nullptr, threads).holds;
}

Resolved resolve_relative(const SynthesisInput& in, int D) {
  const SemisimplicialSet& X = *in.X;
  const BaseData& base = *in.base;
  Resolved r;
  std::vector<Index> witnesses(X.count(0), kUnset);
  for (Index x = 0; x < X.count(0); ++x) {
    const Index over = base.y_deg.get(0, 0, base.p(0, x));
    Index from_sub = kUnset;
    if (in.sub) {
      if (auto local = in.sub->sub.local_index(0, x)) {
        const Index v = in.sub->a_deg.get(0, 0, *local);
        if (v == kUnset) throw Error(Errc::IncompatibleSubcomplexStructure, "A lacks s_0 on a vertex", ErrorSite{0, x});
        from_sub = in.sub->sub.ambient_index(1, v);
      }
    }
    Index f = kUnset;
    if (in.s0) {
      f = (*in.s0)[x];
      require_self_edge(X, x, f);
      if (from_sub != kUnset && f != from_sub)
        throw Error(Errc::IncompatibleSubcomplexStructure, "s0 disagrees with A's s_0", ErrorSite{0, x});
      if (base.p(1, f) != over)
        throw Error(Errc::PreconditionFailed, "s0 does not lie over Y's s_0", ErrorSite{0, x});
      if (!relative_edge_ok(base, f, D, in.threads, &witnesses[x]))
        throw Error(Errc::PreconditionFailed,
                    "s0(" + std::to_string(x) + ") is not p-idempotent, p-cartesian and p-cocartesian up to " +
                        std::to_string(D),
                    ErrorSite{0, x});
    } else if (from_sub != kUnset) {
      f = from_sub;
      if (base.p(1, f) != over)
        throw Error(Errc::IncompatibleSubcomplexStructure, "p∘f does not preserve s_0", ErrorSite{0, x});
      if (!relative_edge_ok(base, f, D, in.threads, &witnesses[x]))
        throw Error(Errc::PreconditionFailed,
                    "A's s_0 at vertex " + std::to_string(x) + " is not p-idempotent, p-cartesian and p-cocartesian",
                    ErrorSite{0, x});
    } else {
      for (Index e : X.cofaces(1, 0, x)) {
        if (X.face(1, e, 1) != x || base.p(1, e) != over) continue;
        if (relative_edge_ok(base, e, D, in.threads, &witnesses[x])) {
          f = e;
          break;
        }
      }
      if (f == kUnset)
        throw Error(Errc::NoIdempotentEquivalence,
                    "no p-idempotent p-equivalence over s_0 at vertex " + std::to_string(x), ErrorSite{0, x});
    }
    r.s0.push_back(f);
  }
  r.witnesses = in.idempotency_witnesses ? in.idempotency_witnesses : std::optional(witnesses);
  return r;
}

void check_relative_inputs(const SynthesisInput& in, int D) {
  const SemisimplicialSet& X = *in.X;
  if (!in.base) throw Error(Errc::InvalidInput, "relative synthesis needs p and Y's degeneracies");
  const BaseData& base = *in.base;
  if (!base.p.source || !base.p.target) throw Error(Errc::InvalidInput, "map without source or target");
  if (!(*base.p.source == X)) throw Error(Errc::InvalidInput, "p does not start at X");
  const SemisimplicialSet& Y = *base.p.target;
  if (D > Y.dim() || D > base.p.dim()) throw Error(Errc::InvalidInput, "bound exceeds the truncation of p");
  require_valid(Y, "Y");
  const auto map_report = validate_map(base.p);
  if (!map_report.ok()) {
    const auto& v = map_report.violations.front();
    throw Error(Errc::PreconditionFailed, "p does not commute with faces", ErrorSite{v.n, v.j});
  }
  if (!complete_levels(base.y_deg, D - 1))
    throw Error(Errc::MissingDegeneracies, "Y's degeneracies must cover levels 0.." + std::to_string(D - 1));
  for (int n = 0; n <= D - 1; ++n)
    for (int k = 0; k <= n; ++k)
      if (base.y_deg.row(k, n).size() != Y.count(n))
        throw Error(Errc::MissingDegeneracies, "Y's degeneracy table does not match Y");

  if (!in.sub) return;
  const SubData& sd = *in.sub;
  if (!sd.sub.ambient() || !(*sd.sub.ambient() == X)) throw Error(Errc::InvalidInput, "A is not a subcomplex of X");
  if (auto bad = sd.sub.first_unclosed())
    throw Error(Errc::InvalidInput, "A is not closed under faces", ErrorSite{bad->dim, bad->index});
  const SSetPtr A = sd.sub.induced();
  const int need_bound = std::min(D - 2, A->dim() - 1);
  if (!complete_levels(sd.a_deg, need_bound))
    throw Error(Errc::MissingDegeneracies, "A's degeneracies must cover levels 0.." + std::to_string(need_bound));
  // p∘f simplicial wherever both tables apply
  const int top = std::min(sd.a_deg.bound(), D - 1);
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= n; ++k) {
      if (sd.a_deg.row(k, n).size() != A->count(n))
        throw Error(Errc::InvalidInput, "A's degeneracy table does not match A");
      for (Index a = 0; a < A->count(n); ++a) {
        const Index v = sd.a_deg.get(k, n, a);
        if (v >= A->count(n + 1))
          throw Error(Errc::IncompatibleSubcomplexStructure, "A's s_" + std::to_string(k) + " leaves A", ErrorSite{n, a});
        const Index lhs = base.p(n + 1, sd.sub.ambient_index(n + 1, v));
        const Index rhs = base.y_deg.get(k, n, base.p(n, sd.sub.ambient_index(n, a)));
        if (lhs != rhs)
          throw Error(Errc::IncompatibleSubcomplexStructure,
                      "p∘f does not commute with s_" + std::to_string(k), ErrorSite{n, sd.sub.ambient_index(n, a)});
      }
    }
}

SynthesisResult run_all(const SynthesisInput& in, int D, const Resolved& r) {
  const SemisimplicialSet& X = *in.X;
  SynthesisResult out;
  out.bound = D;
  out.s0 = r.s0;
  Context ctx{X, D};
  ctx.base = in.base ? &*in.base : nullptr;
  ctx.sub = in.sub ? &*in.sub : nullptr;
  ctx.s0 = &out.s0;
  ctx.witnesses = r.witnesses ? &*r.witnesses : nullptr;
  ctx.cert = &out.certificate;
  ctx.stats = &out.stats;
  if (r.witnesses) out.witnesses = *r.witnesses;

  DegeneracyTable table(X, D - 2);
  for (int N = 0; N <= D - 2; ++N) {
    run_step1(ctx, table, N);
    DegeneracyTable next = table;
    out.t_tables.push_back(run_step2(ctx, table, next, N));
    table = std::move(next);
  }
  const auto report = verify_simplicial(X, table, D, ctx.sub, ctx.base);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(Errc::ConsistencyViolation, "synthesized table fails the " + v.family + " identity", ErrorSite{v.n, v.j});
  }
  out.table = std::move(table);
  return out;
}

Context context_for(const SynthesisInput& in, int D, Certificate* cert, SynthesisStats* stats) {
  Context ctx{*in.X, D};
  ctx.base = in.base ? &*in.base : nullptr;
  ctx.sub = in.sub ? &*in.sub : nullptr;
  ctx.s0 = in.s0 ? &*in.s0 : nullptr;
  ctx.witnesses = in.idempotency_witnesses ? &*in.idempotency_witnesses : nullptr;
  ctx.cert = cert;
  ctx.stats = stats;
  return ctx;
}

}  // namespace

std::optional<Index> forced_value(const SemisimplicialSet& X, const DegeneracyTable& system, const SubData* sub,
                                  SimplexRef x, int target_k, SynthesisStats* stats) {
  if (!X.in_range(x)) throw Error(Errc::InvalidInput, "simplex out of range");
  Context ctx{X, X.dim()};
  ctx.sub = sub;
  ctx.stats = stats;
  const Preimages pre(X, system, target_k);
  const Forced f = force_s(ctx, system, pre, target_k, x.dim, x.index);
  if (f.value == kUnset) return std::nullopt;
  return f.value;
}

GoodSystem step1_extend(const GoodSystem& sys, const SynthesisInput& in, int D, Certificate* cert,
                        SynthesisStats* stats) {
  if (sys.status != GoodStatus::Good) throw Error(Errc::InvalidInput, "step 1 extends a good system");
  require_bound(*in.X, D);
  GoodSystem out = sys;
  out.N = sys.N + 1;
  out.status = GoodStatus::AlmostGood;
  if (out.table.bound() != D - 2) {
    DegeneracyTable fresh(*in.X, D - 2);
    if (sys.N >= 0) throw Error(Errc::InvalidInput, "system table does not cover levels 0..D-2");
    out.table = std::move(fresh);
  }
  run_step1(context_for(in, D, cert, stats), out.table, out.N);
  return out;
}

std::pair<GoodSystem, TTable> step2_correct(const GoodSystem& sys, const SynthesisInput& in, int D,
                                            Certificate* cert, SynthesisStats* stats) {
  if (sys.status != GoodStatus::AlmostGood) throw Error(Errc::InvalidInput, "step 2 corrects an almost good system");
  require_bound(*in.X, D);
  GoodSystem out = sys;
  out.status = GoodStatus::Good;
  TTable T = run_step2(context_for(in, D, cert, stats), sys.table, out.table, sys.N);
  return {std::move(out), std::move(T)};
}

SynthesisResult synthesize(const SynthesisInput& in, int D) {
  if (in.mode != Mode::Absolute || in.base || in.sub)
    throw Error(Errc::InvalidInput, "synthesize runs the absolute form; use synthesize_relative");
  const SemisimplicialSet& X = *in.X;
  require_bound(X, D);
  require_valid(X, "X");
  const auto inner = check_inner(X, D, in.threads);
  if (!inner.holds) throw Error(Errc::NotQuasiSemicategory, "inner horn " + describe(*inner.witness) + " has no filler");
  return run_all(in, D, resolve_absolute(in, D));
}

SynthesisResult synthesize_relative(const SynthesisInput& in, int D) {
  if (in.mode != Mode::Relative) throw Error(Errc::InvalidInput, "synthesize_relative needs mode relative");
  const SemisimplicialSet& X = *in.X;
  require_bound(X, D);
  require_valid(X, "X");
  check_relative_inputs(in, D);
  const auto fib = check_inner_fibration(in.base->p, D, in.threads);
  if (!fib.holds)
    throw Error(Errc::NotInnerFibration, "inner horn " + describe(*fib.witness) + " does not lift over simplex " +
                                             std::to_string(*fib.base_witness));
  return run_all(in, D, resolve_relative(in, D));
}

AddendumResult addendum_s0(const SemisimplicialSet& X, int D, unsigned threads) {
  if (D < 3) throw Error(Errc::TruncationExhausted, "the construction fills 3-dimensional horns; needs D >= 3");
  if (D > X.dim()) throw Error(Errc::InvalidInput, "bound exceeds the truncation of X");
  const auto kan = check_kan(X, D, threads);
  if (!kan.holds) throw Error(Errc::NotKan, "horn " + describe(*kan.witness) + " has no filler");
  AddendumResult out;
  for (Index x = 0; x < X.count(0); ++x) {
    // e : x -> y, i.e. d_1 e = x
    const auto from_x = X.cofaces(1, 1, x);
    if (from_x.empty()) throw Error(Errc::NotKan, "no edge starts at vertex " + std::to_string(x), ErrorSite{0, x});
    const Index e = from_x.front();

    Horn outer(2, 2);
    outer.face(0) = e;
    outer.face(1) = e;
    const auto sigmas = fillers(X, outer);
    if (sigmas.empty()) throw Error(Errc::NotKan, "no filler for " + describe(outer), ErrorSite{0, x});
    const Index sigma = sigmas.front();
    const Index f = X.face(2, sigma, 2);

    Horn cube(3, 3);
    cube.face(0) = cube.face(1) = cube.face(2) = sigma;
    const auto taus = fillers(X, cube);
    if (taus.empty()) throw Error(Errc::NotKan, "no filler for " + describe(cube), ErrorSite{0, x});
    const Index witness = X.face(3, taus.front(), 3);

    if (X.face(2, witness, 0) != f || X.face(2, witness, 1) != f || X.face(2, witness, 2) != f)
      throw Error(Errc::ConsistencyViolation, "missing face of the filled 3-horn is not an idempotency witness",
                  ErrorSite{0, x});
    if (!is_equivalence(X, f, D, threads).holds)
      throw Error(Errc::ConsistencyViolation, "constructed self-edge is not an equivalence", ErrorSite{1, f});
    out.s0.push_back(f);
    out.witnesses.push_back(witness);
    out.edges_used.push_back(e);
  }
  return out;
}

SimplicialReport verify_simplicial(const SemisimplicialSet& X, const DegeneracyTable& t, int D, const SubData* sub,
                                   const BaseData* base) {
  SimplicialReport r;
  if (D > X.dim()) throw Error(Errc::InvalidInput, "bound exceeds the truncation of X");
  const int B = t.bound();
  if (B > D - 1) throw Error(Errc::InvalidInput, "table reaches above the truncation");
  auto violate = [&r](std::string family, int n, Index j, int i, int k, Index lhs, Index rhs) {
    r.violations.push_back({std::move(family), n, j, i, k, lhs, rhs});
  };

  for (int n = 2; n <= D; ++n)
    for (Index j = 0; j < X.count(n); ++j)
      for (int k = 1; k <= n; ++k)
        for (int i = 0; i < k; ++i) {
          ++r.face_face;
          const Index lhs = X.face(n - 1, X.face(n, j, k), i);
          const Index rhs = X.face(n - 1, X.face(n, j, i), k - 1);
          if (lhs != rhs) violate("d_d", n, j, i, k, lhs, rhs);
        }

  bool all_defined = true;
  for (int n = 0; n <= B; ++n)
    for (int k = 0; k <= n; ++k) {
      if (t.row(k, n).size() != X.count(n)) {
        violate("defined", n, 0, -1, k, static_cast<Index>(t.row(k, n).size()), static_cast<Index>(X.count(n)));
        all_defined = false;
        continue;
      }
      for (Index j = 0; j < X.count(n); ++j)
        if (t.get(k, n, j) >= X.count(n + 1)) {
          violate("defined", n, j, -1, k, t.get(k, n, j), kUnset);
          all_defined = false;
        }
    }
  if (!all_defined) return r;

  for (int n = 0; n <= B; ++n)
    for (int k = 0; k <= n; ++k)
      for (Index j = 0; j < X.count(n); ++j) {
        const Index s = t.get(k, n, j);
        for (int i = 0; i <= n + 1; ++i) {
          ++r.face_degeneracy;
          const Index lhs = X.face(n + 1, s, i);
          Index rhs;
          if (i < k)
            rhs = t.get(k - 1, n - 1, X.face(n, j, i));
          else if (i == k || i == k + 1)
            rhs = j;
          else
            rhs = t.get(k, n - 1, X.face(n, j, i - 1));
          if (lhs != rhs) violate("d_s", n, j, i, k, lhs, rhs);
        }
      }

  for (int n = 0; n + 1 <= B; ++n)
    for (int k = 0; k <= n; ++k)
      for (int i = 0; i <= k; ++i)
        for (Index j = 0; j < X.count(n); ++j) {
          ++r.degeneracy_degeneracy;
          const Index lhs = t.get(i, n + 1, t.get(k, n, j));
          const Index rhs = t.get(k + 1, n + 1, t.get(i, n, j));
          if (lhs != rhs) violate("s_s", n, j, i, k, lhs, rhs);
        }

  if (sub) {
    const int top = std::min(B, sub->a_deg.bound());
    for (int n = 0; n <= top; ++n)
      for (int k = 0; k <= n; ++k)
        for (Index a = 0; a < sub->sub.members()[level(n)].size(); ++a) {
          ++r.restriction;
          const Index x = sub->sub.ambient_index(n, a);
          const Index v = sub->a_deg.get(k, n, a);
          const bool inside = v != kUnset && level(n + 1) < sub->sub.members().size() &&
                              v < sub->sub.members()[level(n + 1)].size();
          const Index rhs = inside ? sub->sub.ambient_index(n + 1, v) : kUnset;
          if (t.get(k, n, x) != rhs) violate("restriction", n, x, -1, k, t.get(k, n, x), rhs);
        }
  }
  if (base) {
    const int top = std::min(B, base->y_deg.bound());
    for (int n = 0; n <= top; ++n)
      for (int k = 0; k <= n; ++k)
        for (Index x = 0; x < X.count(n); ++x) {
          ++r.projection;
          const Index lhs = base->p(n + 1, t.get(k, n, x));
          const Index rhs = base->y_deg.get(k, n, base->p(n, x));
          if (lhs != rhs) violate("projection", n, x, -1, k, lhs, rhs);
        }
  }
  return r;
}

DegeneracyTable replay_certificate(const SemisimplicialSet& X, const Certificate& cert, int D) {
  require_bound(X, D);
  DegeneracyTable work(X, D - 2);
  TTable T;
  int stage = -1;
  std::vector<std::tuple<int, Index, Index>> corrected;
  auto finish = [&] {
    for (auto [n, j, v] : corrected) work.set(stage, n, j, v);
    corrected.clear();
  };
  auto check_fill = [&X](const CertificateRecord& rec, const Horn& h) {
    if ((rec.horn && *rec.horn != h) || !fills(X, h, rec.value))
      fail(Errc::ConsistencyViolation, "recorded fill " + std::to_string(rec.value) + " does not fill " + describe(h),
           rec.n, rec.j);
  };
  for (const CertificateRecord& rec : cert) {
    if (rec.N != stage) {
      if (rec.N != stage + 1 || rec.step != 1) throw Error(Errc::ConsistencyViolation, "certificate stages out of order");
      finish();
      stage = rec.N;
      T = fresh_t(X, stage, D - 2);
    }
    if (rec.n < stage || rec.n > D - 2 || rec.j >= X.count(rec.n))
      fail(Errc::ConsistencyViolation, "record outside the synthesis range", rec.n, rec.j);
    if (rec.step == 1) {
      if (rec.target != CertificateRecord::Target::S) throw Error(Errc::ConsistencyViolation, "step-1 record not on s");
      if (rec.kind == CertificateRecord::Kind::Filled) check_fill(rec, step1_horn(X, work, stage, rec.n, rec.j));
      if (rec.value >= X.count(rec.n + 1)) fail(Errc::ConsistencyViolation, "value out of range", rec.n, rec.j);
      work.set(stage, rec.n, rec.j, rec.value);
    } else if (rec.target == CertificateRecord::Target::Sigma) {
      if (rec.value >= X.count(rec.n + 1)) fail(Errc::ConsistencyViolation, "value out of range", rec.n, rec.j);
      corrected.emplace_back(rec.n, rec.j, rec.value);
    } else {
      if (rec.kind == CertificateRecord::Kind::Filled) check_fill(rec, step2_horn(X, work, T, stage, rec.n, rec.j));
      if (rec.value >= X.count(rec.n + 2)) fail(Errc::ConsistencyViolation, "value out of range", rec.n, rec.j);
      T.T[level(rec.n)][rec.j] = rec.value;
      corrected.emplace_back(rec.n, rec.j, X.face(rec.n + 2, rec.value, stage));
    }
  }
  finish();
  return work;
}

}  // namespace degenforge
