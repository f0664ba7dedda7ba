#pragma once

#include <filesystem>
#include <string>

#include "degenforge/nerve.hpp"
#include "degenforge/sset.hpp"

namespace fx {

using namespace degenforge;

inline NerveBundle N2(int D) { return nerve(cyclic_group(2), D); }
inline NerveBundle N3(int D) { return nerve(cyclic_group(3), D); }
inline NerveBundle NM(int D) { return nerve(idempotent_monoid(), D); }
inline NerveBundle NP(int D) { return nerve(interval_poset(), D); }
inline NerveBundle NJ(int D) { return nerve(j_groupoid(), D); }
inline NerveBundle NSq(int D) { return nerve(square_poset(), D); }
inline NerveBundle NK(int D) { return nerve(product(cyclic_group(2), cyclic_group(2)), D); }

inline SSetPtr delta(int n, int D) { return share(standard_simplex(n, D)); }

/// Arrow index by name (the index of the corresponding 1-chain).
inline Index arrow(const NerveBundle& nb, const std::string& name) { return *nb.category.find_arrow(name); }

/// Index of the chain given by arrow names.
inline Index chain(const NerveBundle& nb, std::initializer_list<const char*> names) {
  std::vector<Index> c;
  for (const char* s : names) c.push_back(arrow(nb, s));
  return nb.index_of(static_cast<int>(c.size()), c);
}

/// A scratch directory unique to the calling test.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("degenforge-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fx
