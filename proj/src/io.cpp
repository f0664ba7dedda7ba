#include "degenforge/io.hpp"

#include <fstream>
#include <sstream>

#include "degenforge/error.hpp"

namespace degenforge::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key \"") + key + "\"");
  return *it;
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    bad(std::string("bad value for \"") + what + "\": " + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  return as<T>(field(j, key), key);
}

// Objects and arrows may be referred to by name or by position.
Index resolve(const json& ref, const std::vector<std::string>& names, const char* what) {
  if (ref.is_number_unsigned()) {
    const auto i = ref.get<Index>();
    if (i >= names.size()) bad(std::string(what) + " index out of range");
    return i;
  }
  if (ref.is_string()) {
    for (Index i = 0; i < names.size(); ++i)
      if (names[i] == ref.get<std::string>()) return i;
    bad(std::string("unknown ") + what + " \"" + ref.get<std::string>() + "\"");
  }
  bad(std::string(what) + " must be a name or an index");
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidInput, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json to_json(const SemisimplicialSet& X) {
  json faces = json::array();
  for (int n = 1; n <= X.dim(); ++n) {
    json level = json::array();
    for (Index j = 0; j < X.count(n); ++j) {
      const auto row = X.faces_of(n, j);
      level.push_back(std::vector<Index>(row.begin(), row.end()));
    }
    faces.push_back(std::move(level));
  }
  return {{"dim", X.dim()}, {"cells", X.cells()}, {"faces", std::move(faces)}};
}

SemisimplicialSet sset_from_json(const json& j) {
  const int D = get<int>(j, "dim");
  const auto cells = get<std::vector<std::size_t>>(j, "cells");
  if (D < 0 || cells.size() != static_cast<std::size_t>(D + 1)) bad("\"cells\" must hold dim + 1 counts");
  const auto& faces = field(j, "faces");
  if (!faces.is_array() || faces.size() != static_cast<std::size_t>(D)) bad("\"faces\" must hold dim levels");
  std::vector<std::vector<Index>> flat(static_cast<std::size_t>(D + 1));
  for (int n = 1; n <= D; ++n) {
    const auto rows = as<std::vector<std::vector<Index>>>(faces[static_cast<std::size_t>(n - 1)], "faces");
    if (rows.size() != cells[static_cast<std::size_t>(n)])
      bad("faces of dimension " + std::to_string(n) + " do not match cells");
    for (const auto& row : rows) {
      if (row.size() != static_cast<std::size_t>(n + 1))
        bad("a face row of dimension " + std::to_string(n) + " needs " + std::to_string(n + 1) + " entries");
      flat[static_cast<std::size_t>(n)].insert(flat[static_cast<std::size_t>(n)].end(), row.begin(), row.end());
    }
  }
  return SemisimplicialSet(cells, std::move(flat));
}

json to_json(const SemisimplicialMap& F) { return {{"levels", F.levels}}; }

SemisimplicialMap map_from_json(const json& j, SSetPtr source, SSetPtr target) {
  SemisimplicialMap F{std::move(source), std::move(target), get<std::vector<std::vector<Index>>>(j, "levels")};
  for (int n = 0; n <= F.dim(); ++n)
    if (F.levels[static_cast<std::size_t>(n)].size() != F.source->count(n))
      bad("map level " + std::to_string(n) + " does not match the source");
  return F;
}

json to_json(const Subcomplex& A) { return {{"members", A.members()}}; }

Subcomplex subcomplex_from_json(const json& j, SSetPtr ambient) {
  auto members = get<std::vector<std::vector<Index>>>(j, "members");
  if (members.size() > static_cast<std::size_t>(ambient->dim() + 1)) bad("subcomplex reaches above the ambient set");
  members.resize(static_cast<std::size_t>(ambient->dim() + 1));
  for (int n = 0; n <= ambient->dim(); ++n)
    for (Index x : members[static_cast<std::size_t>(n)])
      if (x >= ambient->count(n)) bad("subcomplex member out of range");
  return Subcomplex(std::move(ambient), std::move(members));
}

json to_json(const DegeneracyTable& t) {
  json s = json::array();
  for (int k = 0; k <= t.bound(); ++k) {
    json per_n = json::array();
    for (int n = 0; n <= t.bound(); ++n) {
      if (n < k) {
        per_n.push_back(json::array());
        continue;
      }
      json row = json::array();
      for (Index v : t.row(k, n)) row.push_back(v == kUnset ? json(nullptr) : json(v));
      per_n.push_back(std::move(row));
    }
    s.push_back(std::move(per_n));
  }
  return {{"s", std::move(s)}, {"bound", t.bound()}, {"hash", t.base_hash}};
}

DegeneracyTable table_from_json(const json& j) {
  const auto& s = field(j, "s");
  if (!s.is_array()) bad("\"s\" must be an array");
  const int B = static_cast<int>(s.size()) - 1;
  if (j.contains("bound") && get<int>(j, "bound") != B) bad("\"bound\" disagrees with \"s\"");
  std::vector<std::vector<std::vector<Index>>> levels(static_cast<std::size_t>(B + 1));
  for (int k = 0; k <= B; ++k) {
    const auto& per_n = s[static_cast<std::size_t>(k)];
    if (!per_n.is_array() || per_n.size() != static_cast<std::size_t>(B + 1)) bad("s[k] must hold bound + 1 levels");
    for (int n = 0; n <= B; ++n) {
      auto& slot = levels[static_cast<std::size_t>(n)];
      slot.resize(static_cast<std::size_t>(n + 1));
      const auto& row = per_n[static_cast<std::size_t>(n)];
      if (!row.is_array()) bad("degeneracy rows must be arrays");
      if (n < k) {
        if (!row.empty()) bad("s_k is not defined below level k");
        continue;
      }
      for (const auto& v : row) slot[static_cast<std::size_t>(k)].push_back(v.is_null() ? kUnset : as<Index>(v, "s"));
    }
  }
  return DegeneracyTable::from_levels(std::move(levels), j.contains("hash") ? get<std::string>(j, "hash") : "");
}

json to_json(const Horn& h) {
  json faces = json::object();
  for (int i = 0; i <= h.n; ++i)
    if (i != h.k) faces[std::to_string(i)] = h.face(i);
  return {{"n", h.n}, {"k", h.k}, {"faces", std::move(faces)}};
}

Horn horn_from_json(const json& j) {
  const int n = get<int>(j, "n");
  const int k = get<int>(j, "k");
  if (n < 1 || k < 0 || k > n) bad("horn needs 0 <= k <= n and n >= 1");
  Horn h(n, k);
  const auto& faces = field(j, "faces");
  if (!faces.is_object() || faces.size() != static_cast<std::size_t>(n)) bad("horn needs exactly n faces");
  for (const auto& [key, value] : faces.items()) {
    int i = -1;
    try {
      std::size_t used = 0;
      i = std::stoi(key, &used);
      if (used != key.size()) i = -1;
    } catch (const std::exception&) {
    }
    if (i < 0 || i > n || i == k) bad("bad horn face index \"" + key + "\"");
    h.face(i) = as<Index>(value, "faces");
  }
  return h;
}

namespace {

const char* kind_name(CertificateRecord::Kind k) {
  switch (k) {
    case CertificateRecord::Kind::Forced: return "forced";
    case CertificateRecord::Kind::Filled: return "filled";
    case CertificateRecord::Kind::Witness: return "witness";
  }
  return "";
}

const char* target_name(CertificateRecord::Target t) {
  switch (t) {
    case CertificateRecord::Target::S: return "s";
    case CertificateRecord::Target::T: return "T";
    case CertificateRecord::Target::Sigma: return "sigma";
  }
  return "";
}

}  // namespace

json to_json(const CertificateRecord& r) {
  json out{{"stage", {{"N", r.N}, {"step", r.step}}},
           {"simplex", {r.n, r.j}},
           {"kind", kind_name(r.kind)},
           {"target", target_name(r.target)},
           {"value", r.value}};
  if (r.horn) out["horn"] = to_json(*r.horn);
  return out;
}

json to_json(const Certificate& c) {
  json out = json::array();
  for (const auto& r : c) out.push_back(to_json(r));
  return out;
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_array()) bad("a certificate is an array of records");
  Certificate out;
  for (const auto& e : j) {
    CertificateRecord r;
    const auto& stage = field(e, "stage");
    r.N = get<int>(stage, "N");
    r.step = get<int>(stage, "step");
    if (r.step != 1 && r.step != 2) bad("step must be 1 or 2");
    const auto simplex = get<std::pair<int, Index>>(e, "simplex");
    r.n = simplex.first;
    r.j = simplex.second;
    const auto kind = get<std::string>(e, "kind");
    if (kind == "forced")
      r.kind = CertificateRecord::Kind::Forced;
    else if (kind == "filled")
      r.kind = CertificateRecord::Kind::Filled;
    else if (kind == "witness")
      r.kind = CertificateRecord::Kind::Witness;
    else
      bad("unknown record kind \"" + kind + "\"");
    const std::string target = e.contains("target") ? get<std::string>(e, "target") : (r.step == 1 ? "s" : "T");
    if (target == "s")
      r.target = CertificateRecord::Target::S;
    else if (target == "T")
      r.target = CertificateRecord::Target::T;
    else if (target == "sigma")
      r.target = CertificateRecord::Target::Sigma;
    else
      bad("unknown record target \"" + target + "\"");
    r.value = get<Index>(e, "value");
    if (e.contains("horn")) r.horn = horn_from_json(e.at("horn"));
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const CategoryPresentation& C) {
  json arrows = json::array();
  for (const auto& a : C.arrows)
    arrows.push_back({{"name", a.name}, {"src", C.objects[a.src]}, {"tgt", C.objects[a.tgt]}});
  json compose = json::array();
  for (Index g = 0; g < C.arrows.size(); ++g)
    for (Index f = 0; f < C.arrows.size(); ++f) {
      const Index gf = C.compose(g, f);
      if (gf != kUnset) compose.push_back({C.arrows[g].name, C.arrows[f].name, C.arrows[gf].name});
    }
  json out{{"objects", C.objects}, {"arrows", std::move(arrows)}, {"compose", std::move(compose)}};
  if (!C.identities.empty()) {
    json ids = json::object();
    for (Index o = 0; o < C.objects.size(); ++o)
      if (auto id = C.identity(o)) ids[C.objects[o]] = C.arrows[*id].name;
    out["identities"] = std::move(ids);
  }
  return out;
}

CategoryPresentation category_from_json(const json& j) {
  CategoryPresentation C;
  for (const auto& name : get<std::vector<std::string>>(j, "objects")) C.add_object(name);
  const auto& arrows = field(j, "arrows");
  if (!arrows.is_array()) bad("\"arrows\" must be an array");
  for (const auto& a : arrows)
    C.add_arrow(get<std::string>(a, "name"), resolve(field(a, "src"), C.objects, "object"),
                resolve(field(a, "tgt"), C.objects, "object"));
  std::vector<std::string> names;
  for (const auto& a : C.arrows) names.push_back(a.name);
  if (j.contains("compose")) {
    for (const auto& triple : j.at("compose")) {
      if (!triple.is_array() || triple.size() != 3) bad("compose entries are [g, f, gf]");
      C.set_composite(resolve(triple[0], names, "arrow"), resolve(triple[1], names, "arrow"),
                      resolve(triple[2], names, "arrow"));
    }
  }
  if (j.contains("identities")) {
    const auto& ids = j.at("identities");
    if (!ids.is_object()) bad("\"identities\" maps objects to arrows");
    for (const auto& [obj, arrow] : ids.items())
      C.set_identity(resolve(json(obj), C.objects, "object"), resolve(arrow, names, "arrow"));
  }
  return C;
}

json to_json(const S0File& f) {
  json out{{"s0", f.s0}};
  if (f.witnesses) out["witnesses"] = *f.witnesses;
  return out;
}

S0File s0_from_json(const json& j) {
  S0File f;
  f.s0 = get<std::vector<Index>>(j, "s0");
  if (j.contains("witnesses")) f.witnesses = get<std::vector<Index>>(j, "witnesses");
  return f;
}

json to_json(const HornVerdict& v) {
  json out{{"property", v.property}, {"bound", v.bound}, {"result", v.holds}};
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  if (v.base_witness) out["over"] = *v.base_witness;
  if (v.holds) out["horns_checked"] = v.horns_checked;
  return out;
}

json to_json(const EdgeVerdict& v) {
  json out{{"property", to_string(v.property)}, {"bound", v.bound}, {"result", v.holds}, {"edge", v.edge}};
  if (v.horn)
    out["witness"] = to_json(*v.horn);
  else if (v.two_simplex)
    out["witness"] = {{"simplex", {2, *v.two_simplex}}};
  else
    out["witness"] = nullptr;
  if (v.base_simplex) out["over"] = *v.base_simplex;
  if (v.holds && v.property != EdgeProperty::Idempotent) out["horns_checked"] = v.horns_checked;
  return out;
}

}  // namespace degenforge::io
