#ifndef WEYLGPD_REALIZATION_HPP
#define WEYLGPD_REALIZATION_HPP

// Geometric realization of a Cartan graph: chambers K^b in V* = Q^r, with psi sending
// alpha_i at the base object to the i-th standard dual basis vector.

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weylgpd/arrangement.hpp"
#include "weylgpd/cartan.hpp"

namespace weylgpd {

struct RealizedObject {
  std::size_t graph_object = 0;
  Chamber chamber;
  int distance = 0;
  std::vector<std::size_t> word;
  std::vector<std::optional<std::size_t>> neighbors;
};

struct Realization {
  CartanGraph graph;
  std::size_t base = 0;
  int depth = 0;
  std::vector<RealizedObject> objects;
  std::map<ChamberId, std::size_t> index;
  RealRootSet real_roots;
  RootSystemTable table;
  std::vector<bool> certified;

  std::size_t size() const noexcept { return objects.size(); }

  std::optional<std::size_t> find(const ChamberId& id) const {
    auto it = index.find(id);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::size_t> certified_interior() const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < objects.size(); ++b)
      if (certified[b]) out.push_back(b);
    return out;
  }

  /// Explicit graph on the realized objects; simply connected by construction.
  CartanGraph realized_graph() const {
    CartanGraph g;
    g.rank = graph.rank;
    g.truncated = !real_roots.complete;
    for (std::size_t b = 0; b < objects.size(); ++b) {
      const auto& o = objects[b];
      g.objects.push_back({"b" + std::to_string(b), graph.matrix(o.graph_object), o.neighbors, o.chamber.basis});
    }
    return g;
  }
};

/// A positive vector spanning the kernel of an affine Cartan matrix, if there is one.
inline std::optional<IntegerVector> affine_null_vector(const GeneralizedCartanMatrix& c) {
  const std::size_t n = c.size();
  std::vector<Covector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    Covector row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = c(i, j);
    rows.push_back(std::move(row));
  }
  const auto ker = kernel(std::span<const Covector>(rows), n);
  if (ker.size() != 1) return std::nullopt;
  Covector v(ker.front().coords());
  v = oriented_primitive(v);
  if (v[0] < 0) v = -v;
  IntegerVector out;
  for (const auto& q : v) {
    if (q <= 0) return std::nullopt;
    out.push_back(q.get_num());
  }
  return out;
}

namespace detail {

inline bool uniform_matrices(const CartanGraph& g) {
  for (const auto& o : g.objects)
    if (!(o.cartan == g.objects.front().cartan)) return false;
  return true;
}

}  // namespace detail

/// Realizes G from object a. Chambers are generated to gallery depth `depth`, or until
/// closure when the real roots at a are complete.
inline Realization realize(const CartanGraph& g, std::size_t a, int depth,
                           std::size_t budget = kDefaultChamberBudget) {
  const std::size_t r = g.rank;
  Realization re;
  re.graph = g;
  re.base = a;
  re.depth = depth;
  re.real_roots = generate_real_roots(g, a, depth);
  const bool complete = re.real_roots.complete;

  std::vector<Covector> roots;
  for (const auto& [v, len] : re.real_roots.at(a)) {
    roots.push_back(to_covector(v));
    roots.push_back(-to_covector(v));
  }
  ConeSpec cone = ConeSpec::truncated(depth);
  if (complete) {
    cone = ConeSpec::spherical();
  } else if (detail::uniform_matrices(g)) {
    if (auto delta = affine_null_vector(g.matrix(a))) cone = ConeSpec::affine(to_covector(*delta), depth);
  }
  std::vector<Covector> standard;
  for (std::size_t i = 0; i < r; ++i) standard.push_back(Covector::unit(r, i));
  re.table = RootSystemTable(r, std::move(roots), cone, standard);

  auto make = [&](std::vector<Covector> basis) {
    try {
      return make_chamber(re.table, std::move(basis));
    } catch (const Error& e) {
      throw Error(ErrorCode::AxiomViolation, std::string("realized chamber is not a chamber: ") + e.what());
    }
  };

  std::map<std::size_t, std::size_t> realized_of_object;
  auto add = [&](std::size_t obj, Chamber k, int dist, std::vector<std::size_t> word) {
    re.index.emplace(k.id, re.objects.size());
    if (!g.lazy) realized_of_object.emplace(obj, re.objects.size());
    re.objects.push_back({obj, std::move(k), dist, std::move(word), std::vector<std::optional<std::size_t>>(r)});
  };
  add(a, make(standard), 0, {});
  std::deque<std::size_t> queue{0};
  bool budget_hit = false;
  while (!queue.empty()) {
    const std::size_t b = queue.front();
    queue.pop_front();
    if (!complete && re.objects[b].distance >= depth) continue;
    for (std::size_t i = 0; i < r; ++i) {
      if (re.objects[b].neighbors[i]) continue;
      const std::size_t obj = re.objects[b].graph_object;
      const auto next_obj = g.rho(obj, i);
      if (!next_obj) continue;
      const auto& c = g.matrix(obj);
      const auto& beta = re.objects[b].chamber.basis;
      std::vector<Covector> basis(r);
      for (std::size_t j = 0; j < r; ++j) {
        basis[j] = j == i ? -beta[i] : beta[j] - Rational(c(i, j)) * beta[i];
      }
      std::size_t d;
      const auto id = chamber_id(basis);
      if (auto found = re.find(id)) {
        d = *found;
        if (re.objects[d].graph_object != *next_obj || re.objects[d].chamber.basis != basis) {
          throw Error(ErrorCode::NotSimplyConnected,
                      "chamber " + to_string(basis) + " is reached as two different objects");
        }
      } else {
        if (!g.lazy) {
          auto it = realized_of_object.find(*next_obj);
          if (it != realized_of_object.end()) {
            throw Error(ErrorCode::NotSimplyConnected, "object " + g.objects[*next_obj].name + " is realized as " +
                                                           to_string(re.objects[it->second].chamber.basis) +
                                                           " and as " + to_string(basis));
          }
        }
        if (re.objects.size() >= budget) {
          budget_hit = true;
          continue;
        }
        auto word = re.objects[b].word;
        word.push_back(i);
        d = re.objects.size();
        add(*next_obj, make(std::move(basis)), re.objects[b].distance + 1, std::move(word));
        queue.push_back(d);
      }
      re.objects[b].neighbors[i] = d;
      if (!re.objects[d].neighbors[i]) re.objects[d].neighbors[i] = b;
    }
  }
  if (budget_hit) re.real_roots.budget_exceeded = true;
  re.certified.resize(re.objects.size());
  for (std::size_t b = 0; b < re.objects.size(); ++b) {
    bool ok = complete || re.objects[b].distance < depth;
    for (std::size_t i = 0; i < r && ok; ++i) ok = re.objects[b].neighbors[i].has_value();
    re.certified[b] = ok;
  }
  return re;
}

// ---------------------------------------------------------------------------
// Queries

struct SeparatingSet {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<Covector> hyperplanes;  ///< primitive keys
};

inline SeparatingSet separating_set(const Realization& re, std::size_t b, std::size_t b2) {
  SeparatingSet s{b, b2, {}};
  for (std::size_t l : separating_lines(re.table, re.objects.at(b).chamber, re.objects.at(b2).chamber)) {
    s.hyperplanes.push_back(re.table.lines()[l].key);
  }
  return s;
}

struct AdjacencyTest {
  bool adjacent = false;    ///< closures meet in a hyperplane-spanning face
  bool rho = false;         ///< rho_i(b) = b'
  bool sandwich = false;    ///< exactly K^b, K^b' lie in S, among generated chambers
  bool separating = false;  ///< S(K^b, K^b') = {psi_b(alpha_i)^perp}
  bool region_complete = false;
};

inline AdjacencyTest adjacency_equivalences_test(const Realization& re, std::size_t b, std::size_t b2, std::size_t i) {
  const std::size_t r = re.graph.rank;
  const auto& k = re.objects.at(b).chamber;
  const auto& l = re.objects.at(b2).chamber;
  AdjacencyTest t;
  t.region_complete = re.real_roots.complete;

  std::set<Vector> rays;
  for (const auto& d : k.rays) rays.insert(primitive_normalize(d));
  std::size_t shared = 0;
  for (const auto& d : l.rays) shared += rays.count(primitive_normalize(d));
  t.adjacent = b != b2 && shared + 1 == r;

  t.rho = re.objects[b].neighbors.at(i) == std::optional<std::size_t>(b2) && b != b2;

  auto inside_s = [&](const Chamber& c) {
    for (std::size_t j = 0; j < r; ++j) {
      if (j == i) continue;
      if (evaluate(k.basis[j], c.witness) <= 0 || evaluate(l.basis[j], c.witness) <= 0) return false;
    }
    return true;
  };
  bool ok = true;
  for (std::size_t c = 0; c < re.size() && ok; ++c) {
    const bool member = c == b || c == b2;
    ok = inside_s(re.objects[c].chamber) == member;
  }
  t.sandwich = ok && b != b2;

  const auto s = separating_set(re, b, b2);
  t.separating = s.hyperplanes.size() == 1 && s.hyperplanes.front() == primitive_normalize(k.basis[i]);
  return t;
}

struct LocateResult {
  enum class Status { Found, NotInCone, BudgetExceeded };
  Status status = Status::Found;
  std::size_t object = 0;
  std::size_t steps = 0;
};

inline std::string_view to_string(LocateResult::Status s) {
  switch (s) {
    case LocateResult::Status::Found: return "found";
    case LocateResult::Status::NotInCone: return "not_in_cone";
    case LocateResult::Status::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

/// Greedy walk from the base chamber, crossing the lowest-index wall negative at x.
inline LocateResult locate_point(const Realization& re, const Vector& x, std::size_t budget = 10'000) {
  if (x.size() != re.graph.rank) throw Error(ErrorCode::DimensionMismatch, "point has the wrong length");
  if (x.is_zero()) throw Error(ErrorCode::ZeroCovector, "cannot locate the origin");
  LocateResult res;
  if (re.table.cone().gamma && evaluate(*re.table.cone().gamma, x) <= 0) {
    res.status = LocateResult::Status::NotInCone;
    return res;
  }
  std::size_t b = 0;
  while (true) {
    const auto& k = re.objects[b].chamber;
    std::optional<std::size_t> wall;
    for (std::size_t i = 0; i < k.basis.size() && !wall; ++i)
      if (evaluate(k.basis[i], x) < 0) wall = i;
    res.object = b;
    if (!wall) return res;
    const auto next = re.objects[b].neighbors[*wall];
    if (!next) {
      res.status = re.real_roots.complete ? LocateResult::Status::NotInCone : LocateResult::Status::BudgetExceeded;
      return res;
    }
    if (res.steps >= budget) {
      res.status = LocateResult::Status::BudgetExceeded;
      return res;
    }
    b = *next;
    ++res.steps;
  }
}

struct LocalGraph {
  std::size_t object = 0;
  std::vector<std::size_t> indices;  ///< I_x
  CartanGraph residue;
  std::vector<Covector> roots_x;
  std::set<IntegerVector> local_roots;  ///< psi_b^{-1}(R_x), restricted to I_x
  bool finite = false;
};

inline LocalGraph local_cartan_graph_at(const Realization& re, const Vector& x, std::size_t budget = 10'000) {
  const auto loc = locate_point(re, x, budget);
  if (loc.status == LocateResult::Status::NotInCone) throw Error(ErrorCode::OutsideCone, x.to_string() + " is not in T");
  if (loc.status == LocateResult::Status::BudgetExceeded) {
    throw Error(ErrorCode::BudgetExceeded, "point location stopped at object b" + std::to_string(loc.object));
  }
  LocalGraph out;
  out.object = loc.object;
  const auto& k = re.objects[loc.object].chamber;
  for (std::size_t i = 0; i < k.basis.size(); ++i)
    if (evaluate(k.basis[i], x) == 0) out.indices.push_back(i);
  for (const auto& a : re.table.roots())
    if (evaluate(a, x) == 0) out.roots_x.push_back(a);
  for (const auto& a : out.roots_x) {
    const auto lambda = k.coordinates(a);
    IntegerVector v;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const bool in_j = std::find(out.indices.begin(), out.indices.end(), i) != out.indices.end();
      if (!in_j && lambda[i] != 0) {
        throw Error(ErrorCode::AxiomViolation, a.to_string() + " vanishes at x but involves a wall not through x");
      }
      if (in_j) v.push_back(lambda[i].get_num());
    }
    out.local_roots.insert(std::move(v));
  }
  if (out.indices.empty()) {
    out.finite = true;
    return out;
  }
  out.residue = residue(re.realized_graph(), loc.object, out.indices);
  const auto real = generate_real_roots(out.residue, 0, 64);
  out.finite = real.complete;
  if (out.finite && real.root_set(0) != out.local_roots) {
    throw Error(ErrorCode::Mismatch, "roots through x differ from the real roots of the residue");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Round trip

struct RoundtripReport {
  bool equivalent = true;
  std::size_t realized_objects = 0;
  std::size_t extracted_objects = 0;
  std::size_t compared = 0;
  std::vector<std::size_t> index_map;  ///< phi_0
  std::string mismatch;
};

/// realize, re-extract from the realized table, and compare on the certified interior.
inline RoundtripReport roundtrip_check(const CartanGraph& g, std::size_t a, int depth,
                                       std::size_t budget = kDefaultChamberBudget) {
  const auto re = realize(g, a, depth, budget);
  const auto ext = extract_cartan_graph(re.table, re.objects.front().chamber, budget);
  const std::size_t r = g.rank;
  RoundtripReport rep;
  rep.realized_objects = re.size();
  rep.extracted_objects = ext.graph.size();
  auto fail = [&](std::string why) {
    if (rep.equivalent) rep.mismatch = std::move(why);
    rep.equivalent = false;
  };

  // phi_0 from wall matching at the seed.
  const auto& seed_ext = ext.complex.chambers.front();
  const auto& seed_re = re.objects.front().chamber;
  rep.index_map.assign(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    auto it = std::find(seed_ext.basis.begin(), seed_ext.basis.end(), seed_re.basis[i]);
    if (it == seed_ext.basis.end()) {
      fail("seed walls differ");
      return rep;
    }
    rep.index_map[i] = static_cast<std::size_t>(it - seed_ext.basis.begin());
  }
  const auto& p = rep.index_map;

  for (std::size_t b : re.certified_interior()) {
    const auto& ob = re.objects[b];
    const auto c = ext.complex.find(ob.chamber.id);
    if (!c || !ext.object_of.count(*c)) {
      fail("chamber " + to_string(ob.chamber.basis) + " is not a certified extracted object");
      continue;
    }
    const std::size_t o = ext.object_of.at(*c);
    const auto& kx = ext.complex.chambers[*c];
    const auto& cr = g.matrix(ob.graph_object);
    const auto& ce = ext.graph.matrix(o);
    for (std::size_t i = 0; i < r; ++i) {
      if (kx.basis[p[i]] != ob.chamber.basis[i]) fail("wall " + std::to_string(i + 1) + " of " + to_string(ob.chamber.basis) + " is indexed differently");
      for (std::size_t j = 0; j < r; ++j) {
        if (cr(i, j) != ce(p[i], p[j])) {
          fail("c_" + std::to_string(i + 1) + std::to_string(j + 1) + " at " + to_string(ob.chamber.basis) + ": " +
               cr(i, j).get_str() + " vs " + ce(p[i], p[j]).get_str());
        }
      }
      const auto nb = ob.neighbors[i];
      const auto nc = ext.complex.neighbors[*c][p[i]];
      if (nb && (!nc || re.objects[*nb].chamber.id != ext.complex.chambers[*nc].id)) {
        fail("rho_" + std::to_string(i + 1) + " differs at " + to_string(ob.chamber.basis));
      }
    }
    ++rep.compared;
  }
  if (re.real_roots.complete && rep.realized_objects != rep.extracted_objects) {
    fail("object counts differ: " + std::to_string(rep.realized_objects) + " vs " + std::to_string(rep.extracted_objects));
  }
  return rep;
}

}  // namespace weylgpd

#endif  // WEYLGPD_REALIZATION_HPP
