#pragma once

// The construction feeding the uniqueness argument: given two simplicial
// structures on C, build X = C × N(J) over Y = N(J), put the first structure
// over the constant-0 chains and the second over the constant-1 chains, and
// extend by relative synthesis. Whether the two restrictions are categorically
// equivalent is not decided here.

#include <cstddef>

#include "degenforge/degeneracy.hpp"
#include "degenforge/sset.hpp"
#include "degenforge/synthesis.hpp"

namespace degenforge {

struct DemoReport {
  bool success = false;
  bool restriction_ok = false;
  bool p_compatible = false;
  std::size_t restriction_checked = 0;
  std::size_t projection_checked = 0;
  ProductSet setup;
  SynthesisResult result;
};

/// Throws PreconditionFailed when deg0 or deg1 fails verify_simplicial over C,
/// RestrictionMismatch if the output does not restrict to them.
DemoReport uniqueness_demo(const SSetPtr& C, const DegeneracyTable& deg0, const DegeneracyTable& deg1, int D,
                           unsigned threads = 1);

}  // namespace degenforge
