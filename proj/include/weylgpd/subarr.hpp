#ifndef WEYLGPD_SUBARR_HPP
#define WEYLGPD_SUBARR_HPP

// Localizations at points, restrictions to intersections of hyperplanes, reduction and
// identification of rank-two systems.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weylgpd/arrangement.hpp"
#include "weylgpd/cartan.hpp"
#include "weylgpd/lp.hpp"
#include "weylgpd/realization.hpp"

namespace weylgpd {

// ---------------------------------------------------------------------------
// Localization

/// A chamber whose closure contains x, found by nudging x off every hyperplane.
inline Chamber chamber_containing(const RootSystemTable& table, const Vector& x) {
  const std::size_t r = table.rank();
  if (x.size() != r) throw Error(ErrorCode::DimensionMismatch, "point has the wrong length");
  if (table.cone().gamma && evaluate(*table.cone().gamma, x) <= 0) {
    throw Error(ErrorCode::OutsideCone, x.to_string() + " is not in the Tits cone");
  }
  for (long t = 0; t < 64; ++t) {
    Vector w(r);
    for (std::size_t k = 0; k < r; ++k) w[k] = ratio(1 + long(k + 1) * (t + 1) + long(k * k) * (t / 3 + 1), t + 2);
    Rational eps = 1;
    for (const auto& line : table.lines()) {
      const Rational vx = evaluate(line.key, x);
      const Rational vw = evaluate(line.key, w);
      if (vx == 0 || vw == 0) continue;
      const Rational bound = abs(vx) / (2 * abs(vw));
      if (bound < eps) eps = bound;
    }
    if (table.cone().gamma) {
      const Rational vw = evaluate(*table.cone().gamma, w);
      if (vw != 0) eps = std::min(eps, Rational(evaluate(*table.cone().gamma, x) / (2 * abs(vw))));
    }
    const Vector y = x + eps * w;
    bool generic = true;
    for (const auto& line : table.lines())
      if (evaluate(line.key, y) == 0) generic = false;
    if (generic) return chamber_from_point(table, y);
  }
  throw Error(ErrorCode::Unsupported, "could not perturb " + x.to_string() + " to a generic point");
}

struct Localization {
  Vector point;
  std::vector<Vector> support;    ///< basis of the intersection of the hyperplanes through x
  std::vector<Covector> roots_x;  ///< ambient coordinates
  Chamber chamber;                ///< K with x in its closure
  std::vector<std::size_t> indices;  ///< walls of K through x
  std::optional<RootSystemTable> table;  ///< R_x in coordinates w.r.t. B^K_x

  bool empty() const { return roots_x.empty(); }
  std::size_t rank() const { return indices.size(); }
};

inline Localization localize(const RootSystemTable& table, const Vector& x, const Chamber& k) {
  Localization l;
  l.point = x;
  l.chamber = k;
  for (std::size_t i = 0; i < k.basis.size(); ++i) {
    const Rational v = evaluate(k.basis[i], x);
    if (v < 0) throw Error(ErrorCode::OutsideCone, x.to_string() + " is not in the closure of " + to_string(k.basis));
    if (v == 0) l.indices.push_back(i);
  }
  for (const auto& a : table.roots())
    if (evaluate(a, x) == 0) l.roots_x.push_back(a);
  l.support = kernel(std::span<const Covector>(l.roots_x), table.rank());
  if (l.empty()) return l;
  std::vector<Covector> local;
  for (const auto& a : l.roots_x) {
    const auto lambda = k.coordinates(a);
    Covector c(l.indices.size());
    for (std::size_t m = 0; m < l.indices.size(); ++m) c[m] = lambda[l.indices[m]];
    local.push_back(std::move(c));
  }
  std::vector<Covector> seed;
  for (std::size_t m = 0; m < l.indices.size(); ++m) seed.push_back(Covector::unit(l.indices.size(), m));
  l.table = RootSystemTable(l.indices.size(), std::move(local), ConeSpec::spherical(), std::move(seed));
  return l;
}

inline Localization localize(const RootSystemTable& table, const Vector& x) {
  return localize(table, x, chamber_containing(table, x));
}

/// Integrality of R_x in every chamber of the localization (the chambers of K_x).
inline PropertyReport check_localization_crystallographic(const Localization& l) {
  if (!l.table) throw Error(ErrorCode::InvalidTable, "empty localization");
  return check_crystallographic(*l.table);
}

struct LocalToGlobalReport {
  bool local_passed = true;
  bool global_passed = true;
  bool consistent = true;
  std::size_t vertex_checks = 0;
  std::vector<Witness> local_witnesses;
  PropertyReport global;
};

/// Vertex localizations against the global crystallographic check (rank != 2 only).
inline LocalToGlobalReport local_to_global_check(const RootSystemTable& table,
                                                 std::size_t chamber_budget = kDefaultChamberBudget) {
  if (table.rank() == 2) {
    throw Error(ErrorCode::Unsupported,
                "local-to-global crystallographicity fails in rank 2; the rescaled affine A1 table is a counterexample");
  }
  LocalToGlobalReport rep;
  const auto cx = explore_chambers(table, chamber_budget);
  for (std::size_t c = 0; c < cx.size(); ++c) {
    const auto& k = cx.chambers[c];
    for (std::size_t v = 0; v < k.rays.size(); ++v) {
      ++rep.vertex_checks;
      for (const auto& a : table.roots()) {
        auto lambda = k.coordinates(a);
        if (lambda[v] != 0) continue;
        if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& q) { return is_integer(q); })) continue;
        rep.local_passed = false;
        if (rep.local_witnesses.size() < kMaxWitnesses)
          rep.local_witnesses.push_back({c, k.basis, a, lambda, cx.certified[c], "vertex " + std::to_string(v + 1)});
      }
    }
  }
  rep.global = check_crystallographic(table, cx);
  rep.global_passed = rep.global.passed;
  rep.consistent = !rep.local_passed || rep.global_passed;
  return rep;
}

// ---------------------------------------------------------------------------
// Reduction

/// Keeps the smallest root on each line; every other root there must be an integer multiple.
inline std::vector<Covector> reduce_roots(const std::vector<Covector>& roots) {
  std::map<Covector, std::vector<Rational>> lines;
  for (const auto& a : roots) {
    const auto key = primitive_normalize(a);
    std::size_t k = 0;
    while (key[k] == 0) ++k;
    const Rational s = a[k] / key[k];
    if (s > 0) lines[key].push_back(s);
  }
  std::vector<Covector> out;
  for (auto& [key, scales] : lines) {
    std::sort(scales.begin(), scales.end());
    for (const auto& s : scales) {
      if (!is_integer(s / scales.front())) {
        throw Error(ErrorCode::NotReducible, "line of " + key.to_string() + " carries " + to_string(scales.front()) +
                                                 " and " + to_string(s) + " times the primitive vector");
      }
    }
    out.push_back(scales.front() * key);
    out.push_back(-(scales.front() * key));
  }
  return out;
}

inline RootSystemTable reduce(const RootSystemTable& table) {
  auto roots = reduce_roots(table.roots());
  // Keep the user's order where possible so seeds and indices stay meaningful.
  std::vector<Covector> ordered;
  std::set<Covector> keep(roots.begin(), roots.end());
  for (const auto& a : table.roots())
    if (keep.count(a)) ordered.push_back(a);
  std::optional<std::vector<Covector>> seed;
  if (table.seed()) {
    seed.emplace();
    for (const auto& b : *table.seed()) seed->push_back(RootSystemTable(table.rank(), roots).minimal_on_line(b));
  }
  return RootSystemTable(table.rank(), std::move(ordered), table.cone(), std::move(seed));
}

// ---------------------------------------------------------------------------
// Restriction

/// Z-basis of {x in Z^r : alpha(x) = 0 for all alpha}, by unimodular column operations.
inline std::vector<Vector> integer_kernel_basis(const std::vector<Covector>& rows, std::size_t r) {
  std::vector<IntegerVector> a;
  for (const auto& row : rows) {
    const auto p = primitive_normalize(row);
    IntegerVector v;
    for (const auto& q : p) v.push_back(q.get_num());
    a.push_back(std::move(v));
  }
  IntegerMatrix u = identity_matrix(r);
  auto column_axpy = [&](std::size_t dst, const Integer& q, std::size_t src) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto column_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  std::size_t col = 0;
  for (std::size_t i = 0; i < a.size() && col < r; ++i) {
    while (true) {
      std::optional<std::size_t> piv;
      for (std::size_t j = col; j < r; ++j)
        if (a[i][j] != 0 && (!piv || abs(a[i][j]) < abs(a[i][*piv]))) piv = j;
      if (!piv) break;
      column_swap(col, *piv);
      bool others = false;
      for (std::size_t j = col + 1; j < r; ++j) {
        if (a[i][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][col].get_mpz_t());
        column_axpy(j, q, col);
        if (a[i][j] != 0) others = true;
      }
      if (!others) {
        ++col;
        break;
      }
    }
  }
  std::vector<Vector> basis;
  for (std::size_t j = col; j < r; ++j) {
    Vector v(r);
    for (std::size_t k = 0; k < r; ++k) v[k] = u[k][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct Restriction {
  std::size_t ambient_rank = 0;
  std::vector<Covector> normals;          ///< projected hyperplane roots, mutually orthogonal
  std::vector<Covector> ambient_roots;    ///< R^H as orthogonal projections in V*
  std::vector<Vector> lattice_basis;      ///< Z-basis of H cap Z^r
  RootSystemTable intrinsic;              ///< R^H in coordinates beta(h_1), ..., beta(h_s)
  std::optional<RootSystemTable> reduced;  ///< (R^H)^red, absent when not reducible
  std::vector<Covector> reduced_ambient;
  std::string reduce_error;

  Covector project(const Covector& beta) const {
    Covector p = beta;
    for (const auto& u : normals) {
      Rational num = 0, den = 0;
      for (std::size_t k = 0; k < u.size(); ++k) {
        num += p[k] * u[k];
        den += u[k] * u[k];
      }
      p -= (num / den) * u;
    }
    return p;
  }

  Covector to_intrinsic(const Covector& beta) const {
    Covector c(lattice_basis.size());
    for (std::size_t m = 0; m < lattice_basis.size(); ++m) c[m] = evaluate(beta, lattice_basis[m]);
    return c;
  }

  /// Coordinates of a point of H with respect to the lattice basis.
  Vector point_to_intrinsic(const Vector& y) const {
    std::vector<Vector> span(lattice_basis);
    auto t = solve_in_span(std::span<const Vector>(span), y);
    if (!t) throw Error(ErrorCode::DimensionMismatch, y.to_string() + " is not in H");
    return Vector(std::move(*t));
  }
};

/// Restricts to the intersection of the given root hyperplanes, one rank drop at a time.
/// Each root is projected by the earlier steps and must then be an element of the
/// current restricted system.
inline Restriction restrict(const RootSystemTable& table, const std::vector<Covector>& hyperplane_roots) {
  const std::size_t r = table.rank();
  Restriction out;
  out.ambient_rank = r;
  std::vector<Covector> current = table.roots();
  std::vector<Covector> originals;
  for (const auto& alpha : hyperplane_roots) {
    if (alpha.size() != r) throw Error(ErrorCode::DimensionMismatch, "hyperplane root has the wrong length");
    const Covector p = out.project(alpha);
    if (p.is_zero() || std::find(current.begin(), current.end(), p) == current.end()) {
      throw Error(ErrorCode::RootNotInSystem, alpha.to_string() + " does not give a root of the current system");
    }
    out.normals.push_back(p);
    originals.push_back(alpha);
    std::set<Covector> next;
    for (const auto& beta : table.roots()) {
      const Covector q = out.project(beta);
      if (q.is_zero()) continue;
      if (table.cone().gamma) {
        std::vector<Covector> zero = originals;
        zero.push_back(beta);
        const std::vector<Covector> pos{*table.cone().gamma};
        if (!lp::find_point_in_cone(pos, zero, r)) continue;
      }
      next.insert(q);
    }
    current.assign(next.begin(), next.end());
  }
  out.ambient_roots = current;
  out.lattice_basis = integer_kernel_basis(out.normals, r);
  std::vector<Covector> intrinsic;
  for (const auto& a : out.ambient_roots) intrinsic.push_back(out.to_intrinsic(a));
  ConeSpec cone = table.cone();
  if (cone.gamma) cone.gamma = out.to_intrinsic(*cone.gamma);
  out.intrinsic = RootSystemTable(out.lattice_basis.size(), std::move(intrinsic), cone);
  try {
    out.reduced = reduce(out.intrinsic);
    out.reduced_ambient = reduce_roots(out.ambient_roots);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotReducible) throw;
    out.reduce_error = e.what();
  }
  return out;
}

inline Restriction restrict(const RootSystemTable& table, const Covector& alpha) {
  return restrict(table, std::vector<Covector>{alpha});
}

/// Roots spanning a proper subspace of V*, re-expressed in coordinates beta(h_m) for a
/// Z-basis h of the lattice orthogonal to their common kernel.
inline RootSystemTable intrinsic_table(const std::vector<Covector>& ambient, ConeSpec cone = {}) {
  if (ambient.empty()) throw Error(ErrorCode::InvalidTable, "empty root set");
  const std::size_t r = ambient.front().size();
  std::vector<Covector> normals;
  for (const auto& v : kernel(std::span<const Covector>(ambient), r)) normals.push_back(Covector(v.coords()));
  const auto h = integer_kernel_basis(normals, r);
  std::vector<Covector> roots;
  for (const auto& a : ambient) {
    Covector c(h.size());
    for (std::size_t m = 0; m < h.size(); ++m) c[m] = evaluate(a, h[m]);
    roots.push_back(std::move(c));
  }
  return RootSystemTable(h.size(), std::move(roots), std::move(cone));
}

struct RestrictionReport {
  bool reducible = false;
  std::string reduce_error;
  std::optional<PropertyReport> crystallographic;
  bool passed = false;
};

inline RestrictionReport check_restriction_crystallographic(const Restriction& rst,
                                                            std::size_t chamber_budget = kDefaultChamberBudget) {
  RestrictionReport rep;
  rep.reducible = rst.reduced.has_value();
  rep.reduce_error = rst.reduce_error;
  if (!rep.reducible) return rep;
  if (rst.reduced->rank() <= 1) {
    rep.crystallographic = PropertyReport{};
    rep.crystallographic->property = "crystallographic";
    rep.crystallographic->chambers_visited = rst.reduced->rank() == 1 ? 2 : 1;
  } else {
    rep.crystallographic = check_crystallographic(*rst.reduced, chamber_budget);
  }
  rep.passed = rep.crystallographic->passed;
  return rep;
}

// ---------------------------------------------------------------------------
// Rank two

/// Objects a_0..a_{2n-1} in a cycle; the edge from a_m to a_{m+1} has index m mod 2 and
/// carries the Cartan entry -seq[m mod n].
inline CartanGraph sequence_graph(const std::vector<long>& seq) {
  const std::size_t n = seq.size();
  if (n == 0) throw Error(ErrorCode::InvalidMatrix, "empty sequence");
  const std::size_t count = 2 * n;
  CartanGraph g;
  g.rank = 2;
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t i = m % 2;
    const std::size_t prev = (m + count - 1) % count;
    IntegerMatrix c{{Integer(2), Integer(0)}, {Integer(0), Integer(2)}};
    c[i][1 - i] = -seq[m % n];
    c[1 - i][i] = -seq[prev % n];
    CartanObject obj{"a" + std::to_string(m), GeneralizedCartanMatrix(std::move(c)), {}, std::nullopt};
    obj.rho.resize(2);
    obj.rho[i] = (m + 1) % count;
    obj.rho[1 - i] = prev;
    g.objects.push_back(std::move(obj));
  }
  return g;
}

/// Cartan entries met while walking once around a rank-two fan, crossing walls 1,2,1,2,...
inline std::vector<long> fan_sequence(const RootSystemTable& table) {
  if (table.rank() != 2) throw Error(ErrorCode::DimensionMismatch, "fan sequences need rank 2");
  const auto cx = explore_chambers(table);
  if (cx.budget_exceeded || cx.certified_count() != cx.size()) {
    throw Error(ErrorCode::Unsupported, "rank-two system is not finite");
  }
  std::vector<long> seq;
  std::size_t c = 0, i = 0;
  do {
    const std::vector<const Chamber*> nbrs{&cx.chambers[*cx.neighbors[c][0]], &cx.chambers[*cx.neighbors[c][1]]};
    const auto data = detail::cartan_from_neighbors(cx.chambers[c], nbrs);
    seq.push_back(-data.cartan(i, 1 - i).get_si());
    c = *cx.neighbors[c][i];
    i = 1 - i;
  } while (!(c == 0 && i == 0) && seq.size() <= 2 * cx.size());
  return seq;
}

/// Smallest rotation of the sequence or its reverse.
inline std::vector<long> canonical_cycle(const std::vector<long>& seq) {
  std::vector<long> best = seq;
  for (int flip = 0; flip < 2; ++flip) {
    std::vector<long> s = seq;
    if (flip) std::reverse(s.begin(), s.end());
    for (std::size_t k = 0; k < s.size(); ++k) {
      std::rotate(s.begin(), s.begin() + 1, s.end());
      best = std::min(best, s);
    }
  }
  return best;
}

struct Rank2Reference {
  std::string label;
  std::vector<long> canonical;
};

/// Built by realizing the reference Cartan graphs, once.
inline const std::vector<Rank2Reference>& rank2_dictionary() {
  static const std::vector<Rank2Reference> dict = [] {
    std::vector<std::pair<std::string, CartanGraph>> refs;
    refs.emplace_back("A1xA1", CartanGraph::standard(GeneralizedCartanMatrix{{2, 0}, {0, 2}}));
    refs.emplace_back("A2", CartanGraph::standard(GeneralizedCartanMatrix{{2, -1}, {-1, 2}}));
    refs.emplace_back("B2", CartanGraph::standard(GeneralizedCartanMatrix{{2, -2}, {-1, 2}}));
    refs.emplace_back("G2", CartanGraph::standard(GeneralizedCartanMatrix{{2, -3}, {-1, 2}}));
    refs.emplace_back("R(1,2,2,2,1,4)", sequence_graph({1, 2, 2, 2, 1, 4}));
    std::vector<Rank2Reference> out;
    for (const auto& [label, g] : refs) {
      const auto re = realize(g, 0, 64);
      if (!re.real_roots.complete) throw Error(ErrorCode::AxiomViolation, "reference " + label + " is not finite");
      out.push_back({label, canonical_cycle(fan_sequence(re.table))});
    }
    return out;
  }();
  return dict;
}

struct Rank2Identification {
  std::string label;  ///< empty when unclassified
  std::vector<long> sequence;
  std::vector<long> canonical;
  std::size_t chambers = 0;
  bool classified() const { return !label.empty(); }
};

inline Rank2Identification identify_rank2(const RootSystemTable& table) {
  if (table.rank() != 2) throw Error(ErrorCode::DimensionMismatch, "identify_rank2 needs a rank-two table");
  const RootSystemTable red = table.reduced() ? table : reduce(table);
  Rank2Identification out;
  out.sequence = fan_sequence(red);
  out.chambers = out.sequence.size();
  out.canonical = canonical_cycle(out.sequence);
  for (const auto& ref : rank2_dictionary())
    if (ref.canonical == out.canonical) out.label = ref.label;
  return out;
}

// ---------------------------------------------------------------------------
// Parabolic subarrangements versus residues

struct ResidueCorrespondenceReport {
  bool equivalent = true;
  std::vector<std::size_t> indices;
  std::size_t residue_objects = 0;
  std::size_t local_objects = 0;
  std::string mismatch;
};

/// Compares the Cartan graph of the localization at x with the J-residue at a chamber
/// K whose closure contains x, where J = the walls of K through x.
inline ResidueCorrespondenceReport residue_correspondence_check(const RootSystemTable& table, const Vector& x,
                                                                std::size_t budget = kDefaultChamberBudget) {
  ResidueCorrespondenceReport rep;
  const auto loc = localize(table, x);
  rep.indices = loc.indices;
  if (loc.empty()) throw Error(ErrorCode::InvalidTable, "no hyperplane passes through x");
  const auto& j = loc.indices;
  const std::size_t q = j.size();
  auto fail = [&](std::string why) {
    if (rep.equivalent) rep.mismatch = std::move(why);
    rep.equivalent = false;
  };

  const auto local = extract_cartan_graph(*loc.table, budget);
  rep.local_objects = local.graph.size();

  // The residue: chambers reachable from K by crossing walls in J only.
  const auto& k0 = loc.chamber;
  std::vector<Chamber> chambers{k0};
  std::map<ChamberId, std::size_t> seen{{k0.id, 0}};
  std::vector<std::vector<std::size_t>> rho;
  for (std::size_t c = 0; c < chambers.size(); ++c) {
    if (chambers.size() > budget) throw Error(ErrorCode::BudgetExceeded, "residue is too large");
    rho.emplace_back(q);
    for (std::size_t m = 0; m < q; ++m) {
      auto next = adjacent_chamber(table, chambers[c], j[m]);
      auto [it, fresh] = seen.emplace(next.id, chambers.size());
      if (fresh) chambers.push_back(std::move(next));
      rho[c][m] = it->second;
    }
  }
  rep.residue_objects = chambers.size();
  if (rep.residue_objects != rep.local_objects) {
    fail("residue has " + std::to_string(rep.residue_objects) + " objects, localization " +
         std::to_string(rep.local_objects));
  }
  auto local_id = [&](const Chamber& c) {
    std::vector<Covector> basis;
    for (std::size_t m = 0; m < q; ++m) {
      const auto lambda = k0.coordinates(c.basis[j[m]]);
      Covector v(q);
      for (std::size_t n = 0; n < q; ++n) v[n] = lambda[j[n]];
      basis.push_back(std::move(v));
    }
    return basis;
  };
  for (std::size_t c = 0; c < chambers.size(); ++c) {
    const auto basis = local_id(chambers[c]);
    const auto lc = local.complex.find(chamber_id(basis));
    if (!lc || !local.object_of.count(*lc)) {
      fail("residue chamber " + to_string(chambers[c].basis) + " has no local counterpart");
      continue;
    }
    if (local.complex.chambers[*lc].basis != basis) fail("local indexing differs at " + to_string(chambers[c].basis));
    const auto global = cartan_matrix_at(table, chambers[c]).cartan.restricted(j);
    const auto& lm = local.graph.matrix(local.object_of.at(*lc));
    if (!(global == lm)) fail("Cartan matrices differ at " + to_string(chambers[c].basis));
    for (std::size_t m = 0; m < q; ++m) {
      const auto ln = local.complex.neighbors[*lc][m];
      if (!ln || local.complex.chambers[*ln].id != chamber_id(local_id(chambers[rho[c][m]]))) {
        fail("rho_" + std::to_string(j[m] + 1) + " differs at " + to_string(chambers[c].basis));
      }
    }
  }
  return rep;
}

}  // namespace weylgpd

#endif  // WEYLGPD_SUBARR_HPP
