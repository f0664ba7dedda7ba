#pragma once

// JSON file formats. Every reader throws ParseError naming the offending key;
// every writer is deterministic (object keys sorted, fixed indentation).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "degenforge/degeneracy.hpp"
#include "degenforge/horn.hpp"
#include "degenforge/nerve.hpp"
#include "degenforge/sset.hpp"
#include "degenforge/synthesis.hpp"

namespace degenforge::io {

using nlohmann::json;

json read_json(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

// "SSET v1": {"dim", "cells", "faces"} with faces[n-1] the c_n face rows.
json to_json(const SemisimplicialSet& X);
SemisimplicialSet sset_from_json(const json& j);

json to_json(const SemisimplicialMap& F);
SemisimplicialMap map_from_json(const json& j, SSetPtr source, SSetPtr target);

json to_json(const Subcomplex& A);
Subcomplex subcomplex_from_json(const json& j, SSetPtr ambient);

// {"s": s[k][n] (empty for n < k), "bound", "hash"}
json to_json(const DegeneracyTable& t);
DegeneracyTable table_from_json(const json& j);

// {"n", "k", "faces": {"i": index}}
json to_json(const Horn& h);
Horn horn_from_json(const json& j);

json to_json(const CertificateRecord& r);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

// {"objects", "arrows": [{"name", "src", "tgt"}], "compose": [[g, f, gf]], "identities"?}
// Arrows and objects are referred to by name.
json to_json(const CategoryPresentation& C);
CategoryPresentation category_from_json(const json& j);

// {"s0": [...], "witnesses": [...]?}
struct S0File {
  std::vector<Index> s0;
  std::optional<std::vector<Index>> witnesses;

  bool operator==(const S0File&) const = default;
};
json to_json(const S0File& f);
S0File s0_from_json(const json& j);

// {"property", "bound", "result", "witness"}
json to_json(const HornVerdict& v);
json to_json(const EdgeVerdict& v);

}  // namespace degenforge::io
