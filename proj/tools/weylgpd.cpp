// weylgpd: command-line front end.
// Exit codes: 0 pass, 1 property failure, 2 input error, 3 budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weylgpd/serialize.hpp"
#include "weylgpd/weylgpd.hpp"

using namespace weylgpd;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct Options {
  std::string input;
  std::string format = "json";
  int depth = -1;
  std::size_t budget = kDefaultChamberBudget;
  std::string property = "cryst";
  std::size_t k = 2;
  std::vector<std::string> roots;
  std::string point;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

bool looks_like_table(const Json& j) { return j.is_object() && j.contains("roots"); }

RootSystemTable load_table(const Options& o) {
  if (builtins::is_builtin(o.input)) return builtins::table(o.input, o.depth > 0 ? o.depth : 5);
  const Json j = load_json(o.input);
  if (!looks_like_table(j)) throw Error(ErrorCode::ParseError, o.input + " is not a root-system table");
  return parse_table(j);
}

CartanGraph load_graph(const Options& o) {
  if (builtins::is_builtin(o.input)) return builtins::graph(o.input);
  return build_graph(parse_graph(load_json(o.input)));
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty coordinate list");
  return out;
}

int emit(const Options& o, const Json& j, const std::string& table_text, int code) {
  if (o.format == "table") {
    std::cout << table_text;
  } else {
    std::cout << j.dump(2) << '\n';
  }
  return code;
}

std::string pair_table(const std::vector<Covector>& roots) {
  std::string s;
  for (const auto& a : demos::pair_representatives(roots)) s += "+-" + a.to_string() + "\n";
  return s;
}

std::string matrix_text(const IntegerMatrix& m) {
  std::string s;
  for (const auto& row : m) {
    s += "  [";
    for (std::size_t j = 0; j < row.size(); ++j) s += (j ? " " : "") + row[j].get_str();
    s += "]\n";
  }
  return s;
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o) {
  Json out;
  std::string text;
  bool ok = true;
  const bool builtin = builtins::is_builtin(o.input);
  const Json j = builtin ? Json{{"cartan", to_json(builtins::gcm(o.input).entries())}} : load_json(o.input);
  if (!looks_like_table(j)) {
    const ParsedGraph p = parse_graph(j);
    Json violations = Json::array();
    for (std::size_t a = 0; a < p.ids.size(); ++a) {
      for (const auto& v : validate_gcm(p.matrices[a]).violations) {
        ok = false;
        violations.push_back({{"object", p.ids[a]}, {"axiom", v.axiom}, {"i", v.i + 1}, {"j", v.j + 1},
                              {"detail", v.detail}});
        text += p.ids[a] + ": " + v.axiom + " fails at (" + std::to_string(v.i + 1) + "," +
                std::to_string(v.j + 1) + ") " + v.detail + "\n";
      }
    }
    if (ok) {
      const auto g = build_graph(p);
      for (const auto& v : check_cartan_graph(g).violations) {
        ok = false;
        violations.push_back({{"axiom", v.axiom}, {"i", v.i + 1}, {"j", v.j + 1}, {"detail", v.detail}});
        text += v.axiom + ": " + v.detail + "\n";
      }
    }
    out["kind"] = "cartan-graph";
    out["objects"] = p.ids.size();
    out["violations"] = std::move(violations);
  } else {
    const auto t = parse_table(j);
    out["kind"] = "table";
    out["rank"] = t.rank();
    out["roots"] = t.roots().size();
    out["hyperplanes"] = t.lines().size();
    out["reduced"] = t.reduced();
    out["nondegenerate"] = is_nondegenerate(t);
    ok = is_nondegenerate(t);
    if (!ok) text += "roots do not span V*\n";
  }
  out["valid"] = ok;
  text = (ok ? "valid\n" : "invalid\n") + text;
  return emit(o, out, text, ok ? kPass : kFail);
}

int cmd_roots(const Options& o) {
  const auto g = load_graph(o);
  const int depth = o.depth >= 0 ? o.depth : 10;
  const auto rs = generate_real_roots(g, 0, depth);
  Json out = to_json(rs, 0);
  std::string text = "depth " + std::to_string(depth) + (rs.complete ? ", complete\n" : ", truncated\n");
  for (const auto& [v, len] : rs.at(0)) text += to_string(v) + "  length " + std::to_string(len) + "\n";
  return emit(o, out, text, rs.budget_exceeded ? kBudget : kPass);
}

int cmd_realize(const Options& o) {
  const auto g = load_graph(o);
  const auto re = realize(g, 0, o.depth >= 0 ? o.depth : 8, o.budget);
  std::string text;
  for (std::size_t b = 0; b < re.size(); ++b) {
    text += "b" + std::to_string(b) + "  d=" + std::to_string(re.objects[b].distance) + "  " +
            to_string(re.objects[b].chamber.basis) + (re.certified[b] ? "" : "  (boundary)") + "\n";
  }
  return emit(o, to_json(re), text, kPass);
}

int cmd_check(const Options& o) {
  const auto t = load_table(o);
  PropertyReport rep;
  if (o.property == "cryst" || o.property == "crystallographic") {
    rep = check_crystallographic(t, o.budget);
  } else if (o.property == "additive") {
    rep = check_additive(t, o.budget);
  } else if (o.property == "k-spherical") {
    rep = check_k_spherical(t, o.k, o.budget);
  } else {
    throw Error(ErrorCode::ParseError, "unknown property " + o.property);
  }
  std::string text = rep.property + ": " + (rep.passed ? "pass" : "fail") + " (" +
                     std::to_string(rep.chambers_visited) + " chambers, " +
                     std::to_string(rep.chambers_certified) + " certified)\n";
  for (const auto& w : rep.witnesses) {
    text += "  chamber " + to_string(w.basis) + ": " + w.root.to_string() + " has coordinates " +
            to_string(w.coordinates) + (w.detail.empty() ? "" : "  " + w.detail) + "\n";
  }
  if (rep.budget_exceeded && rep.passed) return emit(o, to_json(rep), text, kBudget);
  return emit(o, to_json(rep), text, rep.passed ? kPass : kFail);
}

int cmd_restrict(const Options& o) {
  const auto t = load_table(o);
  if (o.roots.empty()) throw Error(ErrorCode::ParseError, "restrict needs at least one --root");
  std::vector<Covector> hs;
  for (const auto& r : o.roots) hs.push_back(Covector(parse_list(r)));
  const auto rst = restrict(t, hs);
  Json out;
  out["rank"] = rst.intrinsic.rank();
  out["ambient"] = to_json(rst.ambient_roots);
  out["intrinsic"] = to_json(rst.intrinsic.roots());
  out["lattice_basis"] = Json::array();
  for (const auto& h : rst.lattice_basis) out["lattice_basis"].push_back(to_json(h));
  out["reduced"] = rst.reduced ? to_json(rst.reduced_ambient) : Json(nullptr);
  if (!rst.reduce_error.empty()) out["reduce_error"] = rst.reduce_error;
  return emit(o, out, pair_table(rst.ambient_roots), kPass);
}

int cmd_localize(const Options& o) {
  const auto t = load_table(o);
  if (o.point.empty()) throw Error(ErrorCode::ParseError, "localize needs --point");
  const auto loc = localize(t, Vector(parse_list(o.point)));
  Json out;
  out["chamber"] = to_json(loc.chamber.basis);
  Json idx = Json::array();
  for (auto i : loc.indices) idx.push_back(i + 1);
  out["indices"] = std::move(idx);
  out["roots"] = to_json(loc.roots_x);
  out["local_roots"] = loc.table ? to_json(loc.table->roots()) : Json::array();
  std::string text = "chamber " + to_string(loc.chamber.basis) + ", rank " + std::to_string(loc.rank()) + "\n" +
                     pair_table(loc.roots_x);
  return emit(o, out, text, kPass);
}

int cmd_extract(const Options& o) {
  const auto t = load_table(o);
  const auto ext = extract_cartan_graph(t, o.budget);
  std::string text;
  for (const auto& obj : ext.graph.objects)
    text += obj.name + " " + (obj.chamber ? to_string(*obj.chamber) : "") + "\n" + matrix_text(obj.cartan.entries());
  Json out = to_json(ext.graph);
  out["chambers_visited"] = ext.complex.size();
  return emit(o, out, text, ext.complex.budget_exceeded ? kBudget : kPass);
}

int cmd_roundtrip(const Options& o) {
  const auto g = load_graph(o);
  const auto rep = roundtrip_check(g, 0, o.depth >= 0 ? o.depth : 8, o.budget);
  Json out{{"equivalent", rep.equivalent},
           {"realized_objects", rep.realized_objects},
           {"extracted_objects", rep.extracted_objects},
           {"compared", rep.compared}};
  if (!rep.equivalent) out["mismatch"] = rep.mismatch;
  std::string text = std::string(rep.equivalent ? "equivalent" : "NOT equivalent") + " on " +
                     std::to_string(rep.compared) + " objects\n" + (rep.equivalent ? "" : rep.mismatch + "\n");
  return emit(o, out, text, rep.equivalent ? kPass : kFail);
}

int cmd_identify(const Options& o) {
  auto t = load_table(o);
  if (t.rank() != 2) {
    std::vector<Covector> roots = t.roots();
    if (rank_of(std::span<const Covector>(roots)) != 2) {
      throw Error(ErrorCode::DimensionMismatch, "roots span a space of dimension other than 2");
    }
    t = intrinsic_table(roots);
  }
  const auto id = identify_rank2(t);
  Json seq = Json::array();
  for (auto s : id.canonical) seq.push_back(s);
  Json out{{"label", id.classified() ? Json(id.label) : Json(nullptr)}, {"sequence", seq}, {"chambers", id.chambers}};
  std::string text = (id.classified() ? id.label : "unclassified") + "\n";
  return emit(o, out, text, id.classified() ? kPass : kFail);
}

int cmd_axioms(const Options& o) {
  const auto g = load_graph(o);
  const auto rs = generate_real_roots(g, 0, o.depth >= 0 ? o.depth : 10);
  const auto rep = check_root_system_axioms(g, rs);
  Json out{{"R1", to_json(rep.r1)}, {"R2", to_json(rep.r2)}, {"R3", to_json(rep.r3)}, {"R4", to_json(rep.r4)}};
  std::string text;
  for (auto [name, r] : {std::pair{"R1", &rep.r1}, {"R2", &rep.r2}, {"R3", &rep.r3}, {"R4", &rep.r4}})
    text += std::string(name) + " " + std::string(to_string(r->status)) + "\n";
  bool failed = false;
  for (const auto* r : {&rep.r1, &rep.r2, &rep.r3, &rep.r4}) failed |= r->status == AxiomStatus::Fail;
  return emit(o, out, text, failed ? kFail : kPass);
}

int cmd_f4_demo(const Options& o) {
  Json out = Json::array();
  std::string text;
  for (auto [i, j] : demos::f4_pairs()) {
    const auto rst = demos::f4_restriction(i, j);
    const auto id = identify_rank2(*rst.reduced);
    const std::string name = "pi_" + std::to_string(i) + std::to_string(j);
    text += "# " + name + "  " + (id.classified() ? id.label : "unclassified") + "\n" + pair_table(rst.ambient_roots);
    out.push_back({{"pair", name}, {"label", id.label}, {"roots", to_json(demos::pair_representatives(rst.ambient_roots))}});
  }
  return emit(o, out, text, kPass);
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::ParseError:
    case ErrorCode::InvalidTable:
    case ErrorCode::InvalidMatrix:
    case ErrorCode::NonSquare:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::RootNotInSystem:
    case ErrorCode::ZeroCovector:
    case ErrorCode::SingularBasis:
    case ErrorCode::OnHyperplane:
    case ErrorCode::OutsideCone:
    case ErrorCode::Unsupported: return kInput;
    default: return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan graphs, Weyl groupoids and crystallographic arrangements"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("WEYLGPD_BUDGET")) {
    try {
      o.budget = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "ParseError: WEYLGPD_BUDGET is not a number\n";
      return kInput;
    }
  }
  app.add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--budget", o.budget, "chamber budget")->check(CLI::NonNegativeNumber);

  auto input = [&](CLI::App* s, const char* what) {
    s->add_option("input", o.input, what)->required();
    s->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    s->add_option("--budget", o.budget, "chamber budget")->check(CLI::NonNegativeNumber);
    s->add_option("--depth", o.depth, "word depth, or truncation for builtin tables")->check(CLI::NonNegativeNumber);
  };
  const char* g = "builtin name or graph JSON";
  const char* t = "builtin name or table JSON";

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> cmds;
  auto add = [&](const char* name, const char* desc, const char* what, int (*fn)(const Options&)) {
    auto* s = app.add_subcommand(name, desc);
    input(s, what);
    cmds.emplace_back(s, fn);
    return s;
  };
  add("validate", "validate a Cartan graph or table", "builtin name, graph or table JSON", cmd_validate);
  add("roots", "real roots at the first object", g, cmd_roots);
  add("realize", "realize a Cartan graph as a root-system table", g, cmd_realize);
  add("axioms", "check the root-system axioms", g, cmd_axioms);
  auto* check = add("check", "check a property of a table", t, cmd_check);
  check->add_option("--property", o.property, "cryst, additive or k-spherical")
      ->check(CLI::IsMember({"cryst", "crystallographic", "additive", "k-spherical"}));
  check->add_option("--k", o.k, "k for k-spherical");
  auto* rst = add("restrict", "restrict to the intersection of root hyperplanes", t, cmd_restrict);
  rst->add_option("--root", o.roots, "comma-separated rationals; repeat for codimension > 1")->required();
  auto* loc = add("localize", "localize at a point", t, cmd_localize);
  loc->add_option("--point", o.point, "comma-separated rationals")->required();
  add("extract-graph", "Cartan graph of a crystallographic table", t, cmd_extract);
  add("roundtrip", "realize, extract and compare", g, cmd_roundtrip);
  add("identify-rank2", "classify a rank-two table", t, cmd_identify);
  auto* demo = app.add_subcommand("f4-demo", "the six F4 double restrictions and their types");
  demo->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cmds.emplace_back(demo, cmd_f4_demo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kInput;
  }
  try {
    for (auto& [s, fn] : cmds)
      if (s->parsed()) return fn(o);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ParseError: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
