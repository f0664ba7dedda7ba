#include "degenforge/cli.hpp"

#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "degenforge/demo.hpp"
#include "degenforge/error.hpp"
#include "degenforge/horn.hpp"
#include "degenforge/io.hpp"
#include "degenforge/nerve.hpp"
#include "degenforge/synthesis.hpp"

namespace degenforge::cli {

using nlohmann::json;

namespace {

thread_local json g_last;

struct Outcome {
  std::string verdict = "yes";
  int bound = 0;
  std::string summary;
  std::optional<json> witness;
  json details = json::object();
};

struct Options {
  std::string input;
  std::string second;
  std::string third;
  std::optional<int> dim;
  bool inner = false;
  bool kan = false;
  bool fibration = false;
  std::string property = "equivalence";
  std::optional<Index> edge;
  std::string map, base, base_deg, sub, sub_deg, s0;
  std::string out, cert, deg, cat, report;
};

unsigned threads_from_env() {
  const char* env = std::getenv("DEGENFORGE_THREADS");
  if (!env || !*env) return 1;
  try {
    return static_cast<unsigned>(std::stoul(env));
  } catch (const std::exception&) {
    throw Error(Errc::InvalidInput, "DEGENFORGE_THREADS must be a non-negative integer");
  }
}

SSetPtr load_sset(const std::string& path) { return share(io::sset_from_json(io::read_json(path))); }

int bound_for(const Options& o, const SemisimplicialSet& X) {
  const int D = o.dim.value_or(X.dim());
  if (D > X.dim())
    throw Error(Errc::InvalidInput, "--dim " + std::to_string(D) + " exceeds the input's truncation " +
                                        std::to_string(X.dim()));
  return D;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::optional<BaseData> load_base(const Options& o, const SSetPtr& X) {
  if (o.map.empty() && o.base.empty() && o.base_deg.empty()) return std::nullopt;
  if (o.map.empty() || o.base.empty()) throw Error(Errc::InvalidInput, "--map and --base go together");
  const SSetPtr Y = load_sset(o.base);
  BaseData b{io::map_from_json(io::read_json(o.map), X, Y), {}};
  if (!o.base_deg.empty()) b.y_deg = io::table_from_json(io::read_json(o.base_deg));
  return b;
}

std::optional<SubData> load_sub(const Options& o, const SSetPtr& X) {
  if (o.sub.empty()) return std::nullopt;
  if (o.sub_deg.empty()) throw Error(Errc::InvalidInput, "--sub needs --sub-deg");
  return SubData{io::subcomplex_from_json(io::read_json(o.sub), X), io::table_from_json(io::read_json(o.sub_deg))};
}

void write_synthesis(const Options& o, const SynthesisResult& r, std::vector<std::string>& outputs) {
  if (!o.out.empty()) {
    io::write_json(o.out, io::to_json(r.table));
    outputs.push_back(o.out);
  }
  if (!o.cert.empty()) {
    io::write_json(o.cert, io::to_json(r.certificate));
    outputs.push_back(o.cert);
  }
}

json stats_json(const SynthesisResult& r) {
  return {{"filled", r.stats.filled},
          {"forced", r.stats.forced},
          {"witnesses", r.stats.witnesses},
          {"representations_compared", r.stats.representations_compared},
          {"s0", r.s0},
          {"table_bound", r.table.bound()}};
}

std::string structure_summary(const SynthesisResult& r) {
  return "simplicial structure on levels 0.." + std::to_string(r.table.bound()) + " (bound " +
         std::to_string(r.bound) + "): yes, " + std::to_string(r.stats.filled) + " filled, " +
         std::to_string(r.stats.forced) + " forced";
}

Outcome cmd_validate(const Options& o) {
  const SSetPtr X = load_sset(o.input);
  const auto rep = validate(*X);
  Outcome res;
  res.bound = X->dim();
  res.details["checked"] = rep.checked;
  if (rep.ok()) {
    res.summary = "valid up to " + std::to_string(X->dim()) + ": yes (" + std::to_string(rep.checked) +
                  " identity instances)";
    return res;
  }
  const auto& v = rep.violations.front();
  res.verdict = "no";
  const bool range = v.kind == FaceViolation::Kind::OutOfRange;
  res.witness = json{{"kind", range ? "out-of-range" : "identity"}, {"n", v.n}, {"j", v.j}, {"i", v.i}, {"k", v.k}};
  res.details["violations"] = rep.violations.size();
  res.summary = "valid up to " + std::to_string(X->dim()) + ": no, " +
                (range ? "face " + std::to_string(v.i) + " out of range" : "d_i d_k identity fails") + " at (n=" +
                std::to_string(v.n) + ", j=" + std::to_string(v.j) + ", i=" + std::to_string(v.i) +
                (range ? "" : ", k=" + std::to_string(v.k)) + ")";
  return res;
}

Outcome from_horn_verdict(const HornVerdict& v, const std::string& label) {
  Outcome res;
  res.bound = v.bound;
  res.verdict = v.holds ? "yes" : "no";
  const json j = io::to_json(v);
  if (!v.holds) res.witness = j["witness"];
  res.details = j;
  res.summary = label + " up to " + std::to_string(v.bound) + ": " + yes_no(v.holds);
  if (v.witness) res.summary += ", witness " + j["witness"].dump();
  return res;
}

Outcome cmd_check(const Options& o, unsigned threads) {
  const SSetPtr X = load_sset(o.input);
  const int D = bound_for(o, *X);
  if (int(o.inner) + int(o.kan) + int(o.fibration) != 1)
    throw Error(Errc::InvalidInput, "check needs exactly one of --inner, --kan, --fibration");
  if (o.inner) return from_horn_verdict(check_inner(*X, D, threads), "quasi-semicategory");
  if (o.kan) return from_horn_verdict(check_kan(*X, D, threads), "Kan");
  const auto base = load_base(o, X);
  if (!base) throw Error(Errc::InvalidInput, "--fibration needs --map and --base");
  return from_horn_verdict(check_inner_fibration(base->p, D, threads), "inner fibration");
}

Outcome cmd_edges(const Options& o, unsigned threads) {
  const SSetPtr X = load_sset(o.input);
  const int D = bound_for(o, *X);
  const auto property = edge_property_from_string(o.property);
  if (!property) throw Error(Errc::InvalidInput, "unknown property \"" + o.property + "\"");
  const auto base = load_base(o, X);
  if (base && *property == EdgeProperty::Equivalence)
    throw Error(Errc::InvalidInput, "relative edges take cartesian, cocartesian or idempotent");

  auto one = [&](Index f) -> EdgeVerdict {
    if (base) {
      const DegeneracyTable* yd = o.base_deg.empty() ? nullptr : &base->y_deg;
      return p_edge_property(base->p, f, *property, D, yd, threads);
    }
    switch (*property) {
      case EdgeProperty::Equivalence: return is_equivalence(*X, f, D, threads);
      case EdgeProperty::Idempotent: {
        EdgeVerdict v;
        v.edge = f;
        v.property = EdgeProperty::Idempotent;
        v.bound = 2;
        v.two_simplex = is_idempotent(*X, f);
        v.holds = v.two_simplex.has_value();
        return v;
      }
      default: return edge_property(*X, f, *property, D, threads);
    }
  };

  Outcome res;
  res.bound = D;
  std::vector<Index> edges;
  if (o.edge) {
    if (*o.edge >= X->count(1)) throw Error(Errc::InvalidInput, "edge out of range");
    edges.push_back(*o.edge);
  } else {
    for (Index f = 0; f < X->count(1); ++f)
      if (*property != EdgeProperty::Idempotent || X->face(1, f, 0) == X->face(1, f, 1)) edges.push_back(f);
  }
  json list = json::array();
  std::size_t holding = 0;
  for (Index f : edges) {
    const EdgeVerdict v = one(f);
    if (v.holds) ++holding;
    list.push_back(io::to_json(v));
    if (!v.holds && !res.witness) res.witness = list.back();
  }
  res.details["edges"] = std::move(list);
  res.verdict = holding == edges.size() ? "yes" : "no";
  if (o.edge)
    res.summary = "edge " + std::to_string(*o.edge) + " " + o.property + " up to " + std::to_string(D) + ": " +
                  res.verdict;
  else
    res.summary = o.property + " up to " + std::to_string(D) + ": " + std::to_string(holding) + " of " +
                  std::to_string(edges.size()) + " edges";
  return res;
}

void apply_s0_file(const Options& o, SynthesisInput& in) {
  if (o.s0.empty()) return;
  io::S0File f = io::s0_from_json(io::read_json(o.s0));
  in.s0 = std::move(f.s0);
  in.idempotency_witnesses = std::move(f.witnesses);
}

Outcome cmd_synthesize(const Options& o, unsigned threads, std::vector<std::string>& outputs) {
  SynthesisInput in;
  in.X = load_sset(o.input);
  in.threads = threads;
  apply_s0_file(o, in);
  const int D = bound_for(o, *in.X);
  const SynthesisResult r = synthesize(in, D);
  write_synthesis(o, r, outputs);
  Outcome res;
  res.bound = D;
  res.details = stats_json(r);
  res.summary = structure_summary(r);
  return res;
}

Outcome cmd_synthesize_rel(const Options& o, unsigned threads, std::vector<std::string>& outputs) {
  SynthesisInput in;
  in.X = load_sset(o.input);
  in.mode = Mode::Relative;
  in.threads = threads;
  in.base = load_base(o, in.X);
  if (!in.base || o.base_deg.empty())
    throw Error(Errc::InvalidInput, "synthesize-rel needs --map, --base and --base-deg");
  in.sub = load_sub(o, in.X);
  apply_s0_file(o, in);
  const int D = bound_for(o, *in.X);
  const SynthesisResult r = synthesize_relative(in, D);
  write_synthesis(o, r, outputs);
  Outcome res;
  res.bound = D;
  res.details = stats_json(r);
  res.summary = "relative " + structure_summary(r);
  return res;
}

Outcome cmd_addendum(const Options& o, unsigned threads, std::vector<std::string>& outputs) {
  const SSetPtr X = load_sset(o.input);
  const int D = bound_for(o, *X);
  const AddendumResult r = addendum_s0(*X, D, threads);
  if (!o.out.empty()) {
    io::write_json(o.out, io::to_json(io::S0File{r.s0, r.witnesses}));
    outputs.push_back(o.out);
  }
  Outcome res;
  res.bound = D;
  res.details = {{"s0", r.s0}, {"witnesses", r.witnesses}, {"edges_used", r.edges_used}};
  std::string list;
  for (std::size_t x = 0; x < r.s0.size(); ++x) list += (x ? ", " : "") + std::to_string(r.s0[x]);
  res.summary = "s0 from the Kan condition up to " + std::to_string(D) + ": [" + list + "]";
  return res;
}

Outcome cmd_nerve(const Options& o, std::vector<std::string>& outputs) {
  if (!o.dim) throw Error(Errc::InvalidInput, "nerve needs --dim");
  if (o.out.empty()) throw Error(Errc::InvalidInput, "nerve needs --out");
  const CategoryPresentation C = io::category_from_json(io::read_json(o.cat));
  const NerveBundle nb = nerve(C, *o.dim);
  io::write_json(o.out, io::to_json(*nb.sset));
  outputs.push_back(o.out);
  if (!o.deg.empty()) {
    if (!nb.oracle) throw Error(Errc::InvalidInput, "--deg needs a category with identities");
    io::write_json(o.deg, io::to_json(*nb.oracle));
    outputs.push_back(o.deg);
  }
  Outcome res;
  res.bound = *o.dim;
  res.details = {{"cells", nb.sset->cells()}, {"unital", nb.oracle.has_value()}};
  res.summary = "nerve up to " + std::to_string(*o.dim) + ": cells " + json(nb.sset->cells()).dump();
  return res;
}

Outcome cmd_demo(const Options& o, unsigned threads, std::vector<std::string>& outputs) {
  const SSetPtr C = load_sset(o.input);
  const DegeneracyTable deg0 = io::table_from_json(io::read_json(o.second));
  const DegeneracyTable deg1 = io::table_from_json(io::read_json(o.third));
  const int D = bound_for(o, *C);
  const DemoReport d = uniqueness_demo(C, deg0, deg1, D, threads);
  if (!o.out.empty()) {
    io::write_json(o.out, io::to_json(d.result.table));
    outputs.push_back(o.out);
  }
  if (!o.cert.empty()) {
    io::write_json(o.cert, io::to_json(d.result.certificate));
    outputs.push_back(o.cert);
  }
  Outcome res;
  res.bound = D;
  res.verdict = d.success ? "yes" : "no";
  res.details = stats_json(d.result);
  res.details["restriction_ok"] = d.restriction_ok;
  res.details["p_compatible"] = d.p_compatible;
  res.details["restriction_checked"] = d.restriction_checked;
  res.details["projection_checked"] = d.projection_checked;
  res.summary = "structure on C x J extending both tables up to " + std::to_string(D) + ": " + res.verdict +
                " (restriction " + yes_no(d.restriction_ok) + ", projection " + yes_no(d.p_compatible) + ")";
  return res;
}

Outcome cmd_verify(const Options& o) {
  const SSetPtr X = load_sset(o.input);
  const DegeneracyTable table = io::table_from_json(io::read_json(o.second));
  const int D = bound_for(o, *X);
  const auto base = load_base(o, X);
  const auto sub = load_sub(o, X);
  const auto rep = verify_simplicial(*X, table, D, sub ? &*sub : nullptr, base ? &*base : nullptr);
  Outcome res;
  res.bound = D;
  res.details = {{"face_face", rep.face_face},
                 {"face_degeneracy", rep.face_degeneracy},
                 {"degeneracy_degeneracy", rep.degeneracy_degeneracy},
                 {"restriction", rep.restriction},
                 {"projection", rep.projection},
                 {"checked", rep.checked()},
                 {"violations", rep.violations.size()}};
  bool ok = rep.ok();
  std::string tail = std::to_string(rep.checked()) + " identity instances";
  if (!rep.ok()) {
    const auto& v = rep.violations.front();
    res.witness = json{{"family", v.family}, {"n", v.n}, {"j", v.j}, {"i", v.i},
                       {"k", v.k}, {"lhs", v.lhs == kUnset ? json(nullptr) : json(v.lhs)},
                       {"rhs", v.rhs == kUnset ? json(nullptr) : json(v.rhs)}};
    tail = v.family + " fails at (n=" + std::to_string(v.n) + ", j=" + std::to_string(v.j) + ", i=" +
           std::to_string(v.i) + ", k=" + std::to_string(v.k) + ")";
  }
  if (!o.cert.empty()) {
    const Certificate cert = io::certificate_from_json(io::read_json(o.cert));
    const DegeneracyTable replayed = replay_certificate(*X, cert, table.bound() + 2);
    const bool same = replayed == table;
    res.details["replay_matches"] = same;
    if (!same) {
      ok = false;
      tail += "; certificate replay differs";
    } else {
      tail += "; certificate replays bit-exactly";
    }
  }
  res.verdict = ok ? "yes" : "no";
  res.summary = "simplicial identities up to " + std::to_string(D) + ": " + res.verdict + ", " + tail;
  return res;
}

std::string site_text(const Error& e) {
  if (!e.site()) return "";
  if (e.site()->dim == 0) return " at vertex " + std::to_string(e.site()->index);
  return " at simplex (" + std::to_string(e.site()->dim) + ", " + std::to_string(e.site()->index) + ")";
}

}  // namespace

int exit_code(const std::string& verdict) {
  if (verdict == "yes") return 0;
  if (verdict == "input-error") return 2;
  return 1;
}

const json& last_report() { return g_last; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degeneracy synthesis on truncated semisimplicial sets", "degenforge"};
  app.require_subcommand(1);
  Options o;

  auto dim = [&o](CLI::App* sc) {
    sc->add_option_function<int>(
          "--dim", [&o](int d) { o.dim = d; }, "dimension bound D (default: the input's truncation)")
        ->check(CLI::NonNegativeNumber);
  };
  auto report = [&o](CLI::App* sc) { sc->add_option("--report", o.report, "write the JSON report here"); };
  auto base = [&o](CLI::App* sc) {
    sc->add_option("--map", o.map, "p : X -> Y (levels file)");
    sc->add_option("--base", o.base, "Y (SSET file)");
    sc->add_option("--base-deg", o.base_deg, "degeneracies of Y");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the face identities of a set");
  validate_cmd->add_option("input", o.input)->required();

  auto* check = app.add_subcommand("check", "inner horn, Kan or inner fibration condition");
  check->add_option("input", o.input)->required();
  check->add_flag("--inner", o.inner);
  check->add_flag("--kan", o.kan);
  check->add_flag("--fibration", o.fibration);
  base(check);

  auto* edges = app.add_subcommand("edges", "classify edges");
  edges->add_option("input", o.input)->required();
  edges->add_option("--property", o.property, "cartesian, cocartesian, equivalence or idempotent");
  edges->add_option_function<Index>("--edge", [&o](Index e) { o.edge = e; });
  base(edges);

  auto* synth = app.add_subcommand("synthesize", "degeneracies on a quasi-semicategory");
  synth->add_option("input", o.input)->required();
  synth->add_option("--s0", o.s0, "s0 file");

  auto* synth_rel = app.add_subcommand("synthesize-rel", "degeneracies over an inner fibration");
  synth_rel->add_option("input", o.input)->required();
  synth_rel->add_option("--s0", o.s0, "s0 file");
  synth_rel->add_option("--sub", o.sub, "subcomplex A");
  synth_rel->add_option("--sub-deg", o.sub_deg, "degeneracies of A, in A's own indexing");
  base(synth_rel);

  auto* addendum = app.add_subcommand("addendum-s0", "s0 on a Kan set");
  addendum->add_option("input", o.input)->required();

  auto* nerve_cmd = app.add_subcommand("nerve", "nerve of a finite category");
  nerve_cmd->add_option("--cat", o.cat)->required();
  nerve_cmd->add_option("--deg", o.deg, "write the identity-insertion degeneracies here");

  auto* demo = app.add_subcommand("demo-uniqueness", "extend two structures on C across C x J");
  demo->add_option("input", o.input)->required();
  demo->add_option("deg0", o.second)->required();
  demo->add_option("deg1", o.third)->required();

  auto* verify = app.add_subcommand("verify", "check a degeneracy table against the simplicial identities");
  verify->add_option("input", o.input)->required();
  verify->add_option("table", o.second)->required();
  verify->add_option("--sub", o.sub);
  verify->add_option("--sub-deg", o.sub_deg);
  base(verify);

  for (auto* sc : {validate_cmd, check, edges, synth, synth_rel, addendum, nerve_cmd, demo, verify}) {
    report(sc);
    if (sc != validate_cmd) dim(sc);
  }
  for (auto* sc : {synth, synth_rel, addendum, nerve_cmd, demo}) sc->add_option("--out", o.out, "output file");
  for (auto* sc : {synth, synth_rel, demo, verify}) sc->add_option("--cert", o.cert, "certificate file");

  std::string command;
  json rep{{"command", nullptr}, {"verdict", "input-error"}, {"bound", nullptr}, {"outputs", json::array()}};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    g_last = rep;
    return 2;
  }
  command = app.get_subcommands().front()->get_name();
  rep["command"] = command;

  std::vector<std::string> outputs;
  try {
    const unsigned threads = threads_from_env();
    Outcome res;
    if (command == "validate")
      res = cmd_validate(o);
    else if (command == "check")
      res = cmd_check(o, threads);
    else if (command == "edges")
      res = cmd_edges(o, threads);
    else if (command == "synthesize")
      res = cmd_synthesize(o, threads, outputs);
    else if (command == "synthesize-rel")
      res = cmd_synthesize_rel(o, threads, outputs);
    else if (command == "addendum-s0")
      res = cmd_addendum(o, threads, outputs);
    else if (command == "nerve")
      res = cmd_nerve(o, outputs);
    else if (command == "demo-uniqueness")
      res = cmd_demo(o, threads, outputs);
    else
      res = cmd_verify(o);
    rep["verdict"] = res.verdict;
    rep["bound"] = res.bound;
    if (res.witness) rep["witness"] = *res.witness;
    rep["summary"] = res.summary;
    rep["details"] = std::move(res.details);
  } catch (const Error& e) {
    const bool input = e.code() == Errc::ParseError || e.code() == Errc::InvalidInput;
    rep["verdict"] = input ? "input-error" : "error";
    rep["error"] = std::string(to_string(e.code()));
    rep["message"] = e.what();
    if (o.dim) rep["bound"] = *o.dim;
    rep["summary"] = std::string(to_string(e.code())) + site_text(e);
    err << e.what() << '\n';
  }
  rep["outputs"] = outputs;
  if (!o.report.empty()) {
    try {
      io::write_json(o.report, rep);
    } catch (const Error& e) {
      err << e.what() << '\n';
      rep["verdict"] = "input-error";
    }
  }
  out << rep["summary"].get<std::string>() << '\n';
  g_last = rep;
  return exit_code(rep["verdict"].get<std::string>());
}

}  // namespace degenforge::cli
