#pragma once

// Construction of degeneracy operators on a quasi-semicategory by induction
// over N. Each stage runs two steps:
//
//   step 1  extend an (N-1)-good system by s_N, filling the horn Λ^{n+1}_{N+1}
//           prescribed by the face/degeneracy identities (almost N-good: the
//           identity d_{N+1} s_N = id is not yet guaranteed);
//   step 2  build T_N : X_n -> X_{n+2} by filling Λ^{n+2}_N and replace s_N by
//           d_N T_N, which makes the system N-good.
//
// Values on the subcomplex A and on simplices already degenerate under some
// s_i, i < N, are forced rather than filled; every representation of such a
// simplex is evaluated and they must agree. In the relative form every fill
// is a lift over the image prescribed by the degeneracies of the base.
//
// With X truncated at D, degeneracies are produced for levels n <= D - 2:
// step 2 needs two dimensions of headroom above n.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "degenforge/degeneracy.hpp"
#include "degenforge/horn.hpp"
#include "degenforge/sset.hpp"

namespace degenforge {

enum class Mode { Absolute, Relative };

/// p : X -> Y together with the simplicial structure of Y.
struct BaseData {
  SemisimplicialMap p;
  DegeneracyTable y_deg;
};

/// A ⊂ X with its simplicial structure, indexed by A's own (local) simplices.
struct SubData {
  Subcomplex sub;
  DegeneracyTable a_deg;
};

struct SynthesisInput {
  SSetPtr X;
  Mode mode = Mode::Absolute;
  std::optional<BaseData> base;
  std::optional<SubData> sub;
  /// s_0 on vertices; discovered when absent.
  std::optional<std::vector<Index>> s0;
  /// A 2-simplex per vertex with all faces s0(x); discovered when absent.
  std::optional<std::vector<Index>> idempotency_witnesses;
  unsigned threads = 1;
};

enum class GoodStatus { Good, AlmostGood };

struct GoodSystem {
  DegeneracyTable table;
  int N = -1;
  GoodStatus status = GoodStatus::Good;
};

struct TTable {
  int N = 0;
  std::vector<std::vector<Index>> T;  // [n][j], kUnset where not constructed

  Index get(int n, Index j) const noexcept {
    if (n < 0 || n >= static_cast<int>(T.size())) return kUnset;
    const auto& level = T[static_cast<std::size_t>(n)];
    return j < level.size() ? level[j] : kUnset;
  }
};

struct CertificateRecord {
  enum class Kind { Forced, Filled, Witness };
  /// What the value defines: provisional s_N (step 1), T_N (step 2), or the
  /// corrected s_N directly where T_N has no headroom (step 2, top level).
  enum class Target { S, T, Sigma };

  int N = 0;
  int step = 1;
  int n = 0;
  Index j = 0;
  Kind kind = Kind::Filled;
  Target target = Target::S;
  Index value = 0;
  std::optional<Horn> horn;

  bool operator==(const CertificateRecord&) const = default;
};

using Certificate = std::vector<CertificateRecord>;

struct SynthesisStats {
  std::size_t filled = 0;
  std::size_t forced = 0;
  std::size_t witnesses = 0;
  std::size_t representations_compared = 0;  // forced values evaluated from more than one representation
};

struct SynthesisResult {
  int bound = 0;  // the truncation D the run used
  DegeneracyTable table;
  Certificate certificate;
  std::vector<TTable> t_tables;
  std::vector<Index> s0;
  std::vector<Index> witnesses;
  SynthesisStats stats;
};

/// Value forced on s_target_k(x) by the subcomplex (f s_k(x')) and by every
/// representation x = s_i(y), i < target_k (s_i s_{k-1}(y)); nullopt if x is
/// neither. Throws ConsistencyViolation when representations disagree.
std::optional<Index> forced_value(const SemisimplicialSet& X, const DegeneracyTable& system, const SubData* sub,
                                  SimplexRef x, int target_k, SynthesisStats* stats = nullptr);

/// (N-1)-good -> almost N-good: defines s_N on X_n for N <= n <= D - 2.
/// The input must carry s0 when N = 0.
GoodSystem step1_extend(const GoodSystem& sys, const SynthesisInput& in, int D, Certificate* cert = nullptr,
                        SynthesisStats* stats = nullptr);

/// almost N-good -> N-good via T_N and s_N := d_N T_N.
std::pair<GoodSystem, TTable> step2_correct(const GoodSystem& sys, const SynthesisInput& in, int D,
                                            Certificate* cert = nullptr, SynthesisStats* stats = nullptr);

/// Absolute form: every s0(x) an idempotent equivalence of a quasi-semicategory.
SynthesisResult synthesize(const SynthesisInput& in, int D);
/// Relative form over an inner fibration p, extending the structure on A.
SynthesisResult synthesize_relative(const SynthesisInput& in, int D);

struct AddendumResult {
  std::vector<Index> s0;
  std::vector<Index> witnesses;
  std::vector<Index> edges_used;  // the edge e : x -> y the construction started from
};

/// On a Kan set: per vertex x pick e : x -> y, fill Λ²₂(e, e) to get f = d_2σ,
/// then fill Λ³₃(σ, σ, σ) whose missing face witnesses f∘f ≃ f.
AddendumResult addendum_s0(const SemisimplicialSet& X, int D, unsigned threads = 1);

struct IdentityViolation {
  std::string family;  // "d_d", "d_s", "s_s", "defined", "restriction", "projection"
  int n = 0;
  Index j = 0;
  int i = 0;
  int k = 0;
  Index lhs = kUnset;
  Index rhs = kUnset;
};

struct SimplicialReport {
  std::size_t face_face = 0;
  std::size_t face_degeneracy = 0;
  std::size_t degeneracy_degeneracy = 0;
  std::size_t restriction = 0;
  std::size_t projection = 0;
  std::vector<IdentityViolation> violations;

  std::size_t checked() const noexcept {
    return face_face + face_degeneracy + degeneracy_degeneracy + restriction + projection;
  }
  bool ok() const noexcept { return violations.empty(); }
};

/// Exhaustively checks the three identity families wherever every term is in
/// range, plus agreement with A's structure and compatibility with p.
SimplicialReport verify_simplicial(const SemisimplicialSet& X, const DegeneracyTable& table, int D,
                                   const SubData* sub = nullptr, const BaseData* base = nullptr);

/// Re-executes the recorded decisions, re-checking every recorded fill against
/// the horn rebuilt from the replayed state. Throws ConsistencyViolation.
DegeneracyTable replay_certificate(const SemisimplicialSet& X, const Certificate& cert, int D);

}  // namespace degenforge
