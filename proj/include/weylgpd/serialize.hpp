#ifndef WEYLGPD_SERIALIZE_HPP
#define WEYLGPD_SERIALIZE_HPP

// JSON encoding. Rationals are strings "p/q" (or "p"); indices are 1-based on the wire.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylgpd/arrangement.hpp"
#include "weylgpd/cartan.hpp"
#include "weylgpd/realization.hpp"
#include "weylgpd/subarr.hpp"

namespace weylgpd {

using Json = nlohmann::ordered_json;

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw Error(ErrorCode::ParseError, "expected a rational, got " + j.dump());
}

inline Integer integer_from_json(const Json& j) {
  const Rational q = rational_from_json(j);
  if (!is_integer(q)) throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
  return q.get_num();
}

inline Covector covector_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected an array of rationals");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rational_from_json(x));
  return Covector(std::move(c));
}

inline Json to_json(const Rational& q) { return to_string(q); }

template <class Tag>
Json to_json(const RationalTuple<Tag>& t) {
  Json a = Json::array();
  for (const auto& q : t) a.push_back(to_string(q));
  return a;
}

inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline Json to_json(const std::vector<Covector>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const IntegerVector& v) {
  Json a = Json::array();
  for (const auto& z : v) a.push_back(z.fits_slong_p() ? Json(z.get_si()) : Json(z.get_str()));
  return a;
}

inline Json to_json(const IntegerMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(to_json(IntegerVector(row)));
  return a;
}

inline IntegerMatrix integer_matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a matrix");
  IntegerMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw Error(ErrorCode::ParseError, "expected a matrix row");
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    m.push_back(std::move(r));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Cartan graphs

struct ParsedGraph {
  std::size_t rank = 0;
  std::vector<std::string> ids;
  std::vector<IntegerMatrix> matrices;
  std::vector<std::vector<std::optional<std::size_t>>> rho;
  bool lazy = false;
  bool truncated = false;
};

/// Either {"cartan": [[..]]} for a one-object graph, or rank/objects/edges.
inline ParsedGraph parse_graph(const Json& j) {
  ParsedGraph g;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "graph must be a JSON object");
  if (j.contains("cartan")) {
    auto m = integer_matrix_from_json(j.at("cartan"));
    g.rank = m.size();
    g.ids.push_back("a");
    g.matrices.push_back(std::move(m));
    g.rho.push_back(std::vector<std::optional<std::size_t>>(g.rank, std::size_t{0}));
    g.lazy = true;
    return g;
  }
  if (!j.contains("rank") || !j.contains("objects")) throw Error(ErrorCode::ParseError, "graph needs rank and objects");
  g.rank = j.at("rank").get<std::size_t>();
  std::map<std::string, std::size_t> index;
  for (const auto& o : j.at("objects")) {
    const std::string id = o.at("id").is_string() ? o.at("id").get<std::string>() : o.at("id").dump();
    if (!index.emplace(id, g.ids.size()).second) throw Error(ErrorCode::ParseError, "duplicate object id " + id);
    g.ids.push_back(id);
    g.matrices.push_back(integer_matrix_from_json(o.at("cartan")));
    g.rho.emplace_back(g.rank);
  }
  auto lookup = [&](const Json& v) {
    const std::string id = v.is_string() ? v.get<std::string>() : v.dump();
    auto it = index.find(id);
    if (it == index.end()) throw Error(ErrorCode::ParseError, "edge names unknown object " + id);
    return it->second;
  };
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      const auto i = e.at("i").get<std::size_t>();
      if (i < 1 || i > g.rank) throw Error(ErrorCode::ParseError, "edge index out of range");
      const auto a = lookup(e.at("from"));
      const auto b = lookup(e.at("to"));
      for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
        auto& slot = g.rho[x][i - 1];
        if (slot && *slot != y) {
          throw Error(ErrorCode::InvalidTable, "rho_" + std::to_string(i) + " of " + g.ids[x] + " is not well defined");
        }
        slot = y;
      }
    }
  }
  g.lazy = j.value("lazy", false);
  g.truncated = j.value("truncated", false);
  return g;
}

/// Validates every matrix and builds the graph.
inline CartanGraph build_graph(const ParsedGraph& p) {
  CartanGraph g;
  g.rank = p.rank;
  g.lazy = p.lazy;
  g.truncated = p.truncated;
  for (std::size_t a = 0; a < p.ids.size(); ++a) {
    if (p.matrices[a].size() != p.rank) throw Error(ErrorCode::DimensionMismatch, "matrix of " + p.ids[a] + " has the wrong size");
    g.objects.push_back({p.ids[a], GeneralizedCartanMatrix(p.matrices[a]), p.rho[a], std::nullopt});
  }
  return g;
}

inline Json to_json(const CartanGraph& g) {
  Json j;
  j["rank"] = g.rank;
  Json objs = Json::array();
  Json edges = Json::array();
  for (std::size_t a = 0; a < g.size(); ++a) {
    Json o;
    o["id"] = g.objects[a].name;
    o["cartan"] = to_json(g.matrix(a).entries());
    if (g.objects[a].chamber) o["basis"] = to_json(*g.objects[a].chamber);
    objs.push_back(std::move(o));
    for (std::size_t i = 0; i < g.rank; ++i) {
      const auto b = g.rho(a, i);
      if (b && *b >= a) edges.push_back({{"i", i + 1}, {"from", g.objects[a].name}, {"to", g.objects[*b].name}});
    }
  }
  j["objects"] = std::move(objs);
  j["edges"] = std::move(edges);
  if (g.lazy) j["lazy"] = true;
  if (g.truncated) j["truncated"] = true;
  return j;
}

// ---------------------------------------------------------------------------
// Tables

inline RootSystemTable parse_table(const Json& j) {
  if (!j.is_object() || !j.contains("roots")) throw Error(ErrorCode::ParseError, "table needs roots");
  std::vector<Covector> roots;
  for (const auto& r : j.at("roots")) roots.push_back(covector_from_json(r));
  std::size_t rank = j.contains("rank") ? j.at("rank").get<std::size_t>() : (roots.empty() ? 0 : roots.front().size());
  ConeSpec cone;
  if (j.contains("cone")) {
    const auto& c = j.at("cone");
    if (c.is_string()) {
      if (c.get<std::string>() != "spherical") throw Error(ErrorCode::ParseError, "unknown cone " + c.dump());
    } else if (c.is_object()) {
      if (c.contains("affine")) {
        cone.kind = ConeKind::Affine;
        cone.gamma = covector_from_json(c.at("affine"));
      } else if (c.contains("truncated")) {
        cone.kind = ConeKind::Truncated;
      } else {
        throw Error(ErrorCode::ParseError, "unknown cone " + c.dump());
      }
      if (c.contains("truncated")) cone.depth = c.at("truncated").get<int>();
    } else {
      throw Error(ErrorCode::ParseError, "unknown cone " + c.dump());
    }
  }
  std::optional<std::vector<Covector>> seed;
  if (j.contains("seed")) {
    seed.emplace();
    for (const auto& s : j.at("seed")) seed->push_back(covector_from_json(s));
  }
  RootSystemTable t(rank, std::move(roots), cone, seed);
  if (j.value("reduced", false) && !t.reduced()) throw Error(ErrorCode::InvalidTable, "table is marked reduced but is not");
  return t;
}

inline Json to_json(const ConeSpec& c) {
  if (c.kind == ConeKind::Spherical) return "spherical";
  Json j = Json::object();
  if (c.gamma) j["affine"] = to_json(*c.gamma);
  if (c.depth) j["truncated"] = *c.depth;
  return j;
}

inline Json to_json(const RootSystemTable& t) {
  Json j;
  j["rank"] = t.rank();
  j["cone"] = to_json(t.cone());
  j["reduced"] = t.reduced();
  j["roots"] = to_json(t.roots());
  if (t.seed()) j["seed"] = to_json(*t.seed());
  return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const Witness& w) {
  Json j;
  j["chamber"] = w.chamber;
  j["basis"] = to_json(w.basis);
  j["root"] = to_json(w.root);
  j["coordinates"] = to_json(w.coordinates);
  j["certified"] = w.certified;
  j["detail"] = w.detail;
  return j;
}

inline Json to_json(const PropertyReport& r) {
  Json j;
  j["property"] = r.property;
  j["status"] = r.passed ? "pass" : "fail";
  j["chambers_visited"] = r.chambers_visited;
  j["certified"] = r.chambers_certified;
  j["budget_exceeded"] = r.budget_exceeded;
  Json w = Json::array();
  for (const auto& x : r.witnesses) w.push_back(to_json(x));
  j["witness"] = std::move(w);
  return j;
}

inline Json to_json(const RealRootSet& s, std::size_t object) {
  Json j;
  j["depth"] = s.depth;
  j["complete"] = s.complete;
  Json roots = Json::array();
  for (const auto& [v, len] : s.at(object)) roots.push_back({{"root", to_json(v)}, {"length", len}});
  j["roots"] = std::move(roots);
  return j;
}

inline Json to_json(const AxiomResult& r) {
  return {{"status", std::string(to_string(r.status))}, {"witness", r.witnesses}};
}

inline Json to_json(const Realization& re) {
  Json j;
  j["depth"] = re.depth;
  j["complete"] = re.real_roots.complete;
  Json objs = Json::array();
  for (std::size_t b = 0; b < re.size(); ++b) {
    const auto& o = re.objects[b];
    Json w = Json::array();
    for (auto i : o.word) w.push_back(i + 1);
    objs.push_back({{"id", "b" + std::to_string(b)},
                    {"object", re.graph.objects[o.graph_object].name},
                    {"distance", o.distance},
                    {"word", std::move(w)},
                    {"basis", to_json(o.chamber.basis)}});
  }
  j["objects"] = std::move(objs);
  j["roots"] = to_json(re.table.roots());
  j["cone"] = to_json(re.table.cone());
  Json cert = Json::array();
  for (auto b : re.certified_interior()) cert.push_back("b" + std::to_string(b));
  j["certified_interior"] = std::move(cert);
  return j;
}

}  // namespace weylgpd

#endif  // WEYLGPD_SERIALIZE_HPP
