#ifndef WEYLGPD_CARTAN_HPP
#define WEYLGPD_CARTAN_HPP

// Generalized Cartan matrices, Cartan graphs and their Weyl groupoids acting on Z^I.
//
// Indices are 0-based internally; the JSON and CLI surfaces print them 1-based.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weylgpd/error.hpp"
#include "weylgpd/exactlin.hpp"

namespace weylgpd {

using IntegerMatrix = std::vector<std::vector<Integer>>;

inline IntegerMatrix identity_matrix(std::size_t n) {
  IntegerMatrix m(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t p = k ? b[0].size() : 0;
  IntegerMatrix out(n, std::vector<Integer>(p, Integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < p; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline IntegerVector apply(const IntegerMatrix& m, const IntegerVector& v) {
  IntegerVector out(m.size(), Integer(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Integer integer_determinant(const IntegerMatrix& m) {
  RationalMatrix q(m.size(), std::vector<Rational>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) q[i][j] = m[i][j];
  return determinant(std::move(q)).get_num();
}

struct AxiomViolation {
  std::string axiom;
  std::size_t i = 0;
  std::size_t j = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<AxiomViolation> violations;
  bool valid() const { return violations.empty(); }
};

/// Checks (M1) c_ii = 2, c_jk <= 0 off the diagonal, and (M2) c_ij = 0 iff c_ji = 0.
inline ValidationReport validate_gcm(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw Error(ErrorCode::NonSquare, "Cartan matrix must be square");
  }
  ValidationReport report;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 2) {
      report.violations.push_back({"M1", i, i, "diagonal entry is " + m[i][i].get_str()});
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] > 0) {
        report.violations.push_back({"M1", i, j, "positive off-diagonal entry " + m[i][j].get_str()});
      }
      if (i < j && ((m[i][j] == 0) != (m[j][i] == 0))) {
        report.violations.push_back({"M2", i, j,
                                     "c_ij = " + m[i][j].get_str() + " but c_ji = " + m[j][i].get_str()});
      }
    }
  }
  return report;
}

class GeneralizedCartanMatrix {
 public:
  GeneralizedCartanMatrix() = default;

  explicit GeneralizedCartanMatrix(IntegerMatrix entries) : entries_(std::move(entries)) {
    const auto report = validate_gcm(entries_);
    if (!report.valid()) {
      const auto& v = report.violations.front();
      throw Error(ErrorCode::InvalidMatrix, "(" + v.axiom + ") at (" + std::to_string(v.i + 1) + "," +
                                                std::to_string(v.j + 1) + "): " + v.detail);
    }
  }

  GeneralizedCartanMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    for (const auto& r : rows) {
      std::vector<Integer> row;
      for (long x : r) row.emplace_back(x);
      entries_.push_back(std::move(row));
    }
    *this = GeneralizedCartanMatrix(std::move(entries_));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const IntegerMatrix& entries() const noexcept { return entries_; }

  /// Restriction to the index subset J (in the given order).
  GeneralizedCartanMatrix restricted(const std::vector<std::size_t>& indices) const {
    IntegerMatrix sub(indices.size(), std::vector<Integer>(indices.size()));
    for (std::size_t a = 0; a < indices.size(); ++a)
      for (std::size_t b = 0; b < indices.size(); ++b) sub[a][b] = entries_[indices[a]][indices[b]];
    return GeneralizedCartanMatrix(std::move(sub));
  }

  /// Matrix of sigma_i on Z^I: columns are the images of the standard basis.
  IntegerMatrix reflection_matrix(std::size_t i) const {
    IntegerMatrix s = identity_matrix(size());
    for (std::size_t j = 0; j < size(); ++j) s[i][j] -= entries_[i][j];
    return s;
  }

  friend bool operator==(const GeneralizedCartanMatrix& a, const GeneralizedCartanMatrix& b) {
    return a.entries_ == b.entries_;
  }

 private:
  IntegerMatrix entries_;
};

/// sigma_i(alpha_j) = alpha_j - c_ij alpha_i, extended linearly.
inline IntegerVector reflect(const GeneralizedCartanMatrix& c, std::size_t i, const IntegerVector& v) {
  if (i >= c.size() || v.size() != c.size()) {
    throw Error(ErrorCode::DimensionMismatch, "reflection index or vector length");
  }
  Integer pairing = 0;
  for (std::size_t j = 0; j < v.size(); ++j) pairing += c(i, j) * v[j];
  IntegerVector out = v;
  out[i] -= pairing;
  return out;
}

struct CartanObject {
  std::string name;
  GeneralizedCartanMatrix cartan;
  /// rho_i(a); empty where a truncated graph does not record the edge.
  std::vector<std::optional<std::size_t>> rho;
  /// Realized chamber basis when the object came from an arrangement or a realization.
  std::optional<std::vector<Covector>> chamber;
};

/// Explicit Cartan graph over objects 0..n-1.
///
/// A `lazy` graph is a presentation whose intended object set is its simply connected
/// cover; realization identifies those objects by their chambers.
struct CartanGraph {
  std::size_t rank = 0;
  std::vector<CartanObject> objects;
  bool lazy = false;
  bool truncated = false;

  std::size_t size() const noexcept { return objects.size(); }
  const GeneralizedCartanMatrix& matrix(std::size_t a) const { return objects.at(a).cartan; }
  std::optional<std::size_t> rho(std::size_t a, std::size_t i) const { return objects.at(a).rho.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t a = 0; a < objects.size(); ++a)
      if (objects[a].name == name) return a;
    return std::nullopt;
  }

  /// One object, rho_i = id, matrix C everywhere.
  static CartanGraph standard(const GeneralizedCartanMatrix& c, std::string name = "a") {
    CartanGraph g;
    g.rank = c.size();
    CartanObject obj{std::move(name), c, {}, std::nullopt};
    obj.rho.assign(c.size(), std::size_t{0});
    g.objects.push_back(std::move(obj));
    g.lazy = true;
    return g;
  }
};

/// (C1) and (C2) on every recorded edge.
inline ValidationReport check_cartan_graph(const CartanGraph& g) {
  ValidationReport report;
  for (std::size_t a = 0; a < g.size(); ++a) {
    const auto& obj = g.objects[a];
    if (obj.cartan.size() != g.rank || obj.rho.size() != g.rank) {
      throw Error(ErrorCode::DimensionMismatch, "object " + obj.name + " has the wrong rank");
    }
    for (std::size_t i = 0; i < g.rank; ++i) {
      const auto b = obj.rho[i];
      if (!b) continue;
      const auto back = g.rho(*b, i);
      if (back && *back != a) {
        report.violations.push_back({"C1", i, i, "rho_" + std::to_string(i + 1) + " is not an involution at " + obj.name});
      }
      for (std::size_t j = 0; j < g.rank; ++j) {
        if (obj.cartan(i, j) != g.matrix(*b)(i, j)) {
          report.violations.push_back({"C2", i, j, "c_ij differs between " + obj.name + " and " + g.objects[*b].name});
        }
      }
    }
  }
  return report;
}

struct Morphism {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> word;
  IntegerMatrix matrix;
};

/// Composite sigma_{i_k} ... sigma_{i_1} of the path starting at `source`.
inline Morphism path_morphism(const CartanGraph& g, std::size_t source, const std::vector<std::size_t>& word) {
  Morphism m{source, source, word, identity_matrix(g.rank)};
  for (std::size_t i : word) {
    const auto next = g.rho(m.target, i);
    if (!next) throw Error(ErrorCode::BudgetExceeded, "path leaves the recorded part of the graph");
    m.matrix = multiply(g.matrix(m.target).reflection_matrix(i), m.matrix);
    m.target = *next;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Real roots

struct RealRootSet {
  /// object -> (root -> minimal word length producing it)
  std::map<std::size_t, std::map<IntegerVector, int>> roots;
  int depth = 0;
  bool complete = false;
  bool budget_exceeded = false;

  const std::map<IntegerVector, int>& at(std::size_t object) const { return roots.at(object); }

  std::set<IntegerVector> root_set(std::size_t object) const {
    std::set<IntegerVector> out;
    for (const auto& [v, len] : roots.at(object)) out.insert(v);
    return out;
  }
};

namespace detail {

inline IntegerVector flatten(std::size_t object, const IntegerMatrix& m) {
  IntegerVector key{Integer(static_cast<unsigned long>(object))};
  for (const auto& row : m) key.insert(key.end(), row.begin(), row.end());
  return key;
}

struct RootLayers {
  std::map<IntegerVector, int> roots;
  bool exhausted = false;
  bool budget_exceeded = false;
  std::set<std::size_t> objects;
};

// Breadth-first over states (object c, M) where M : Z^I at c -> Z^I at `base`.
// Every column of M is a real root at `base`.
inline RootLayers root_layers(const CartanGraph& g, std::size_t base, int layers, std::size_t state_budget) {
  RootLayers out;
  const std::size_t r = g.rank;
  std::set<IntegerVector> seen;
  std::vector<std::pair<std::size_t, IntegerMatrix>> frontier{{base, identity_matrix(r)}};
  seen.insert(flatten(base, frontier.front().second));
  out.objects.insert(base);
  auto record = [&](const IntegerMatrix& m, int len) {
    for (std::size_t j = 0; j < r; ++j) {
      IntegerVector col(r);
      for (std::size_t k = 0; k < r; ++k) col[k] = m[k][j];
      out.roots.emplace(std::move(col), len);
    }
  };
  record(frontier.front().second, 0);
  for (int len = 1; len <= layers; ++len) {
    std::vector<std::pair<std::size_t, IntegerMatrix>> next;
    for (const auto& [c, m] : frontier) {
      for (std::size_t i = 0; i < r; ++i) {
        const auto c2 = g.rho(c, i);
        if (!c2) continue;
        // sigma_i at c2 maps c2 -> c because rho_i(c2) = c.
        IntegerMatrix m2 = multiply(m, g.matrix(*c2).reflection_matrix(i));
        auto key = flatten(*c2, m2);
        if (!seen.insert(std::move(key)).second) continue;
        if (seen.size() > state_budget) {
          out.budget_exceeded = true;
          return out;
        }
        record(m2, len);
        out.objects.insert(*c2);
        next.emplace_back(*c2, std::move(m2));
      }
    }
    if (next.empty()) {
      out.exhausted = true;
      break;
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultStateBudget = 2'000'000;

/// Real roots at every object within word distance `depth` of `a`.
///
/// `complete` is set when one further layer adds no root at any visited object.
inline RealRootSet generate_real_roots(const CartanGraph& g, std::size_t a, int depth,
                                       std::size_t state_budget = kDefaultStateBudget) {
  if (depth < 0) throw Error(ErrorCode::InvalidTable, "depth must be nonnegative");
  RealRootSet out;
  out.depth = depth;
  const auto from_a = detail::root_layers(g, a, depth, state_budget);
  std::set<std::size_t> objects = from_a.objects;
  if (g.lazy) objects = {a};
  bool complete = true;
  for (std::size_t b : objects) {
    auto layers = detail::root_layers(g, b, depth + 1, state_budget);
    if (layers.budget_exceeded) {
      out.budget_exceeded = true;
      complete = false;
    }
    auto& dest = out.roots[b];
    for (const auto& [v, len] : layers.roots) {
      if (len <= depth) dest.emplace(v, len);
      else complete = false;
    }
  }
  out.complete = complete && !out.budget_exceeded;
  return out;
}

/// Result of counting R^a within N_0 alpha_i + N_0 alpha_j.
struct MijResult {
  std::optional<std::size_t> value;  ///< empty means Infinite
  bool certified = false;            ///< exact count (stabilized), not a heuristic
  int depth = 0;
};

inline bool in_rank_two_cone(const IntegerVector& v, std::size_t i, std::size_t j) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k == i || k == j) {
      if (v[k] < 0) return false;
    } else if (v[k] != 0) {
      return false;
    }
  }
  return true;
}

inline MijResult m_ij(const RealRootSet& roots, std::size_t a, std::size_t i, std::size_t j) {
  if (i == j) throw Error(ErrorCode::InvalidMatrix, "m_ij needs i != j");
  std::size_t at_depth = 0;
  std::size_t before = 0;
  for (const auto& [v, len] : roots.at(a)) {
    if (!in_rank_two_cone(v, i, j)) continue;
    ++at_depth;
    if (len < roots.depth) ++before;
  }
  MijResult out;
  out.depth = roots.depth;
  if (roots.complete || at_depth == before) {
    out.value = at_depth;
    out.certified = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residues

/// The J-residue containing b: objects Pi_J(b), matrices restricted to J.
inline CartanGraph residue(const CartanGraph& g, std::size_t b, const std::vector<std::size_t>& indices,
                           std::size_t object_budget = 1'000'000) {
  if (indices.empty()) throw Error(ErrorCode::InvalidMatrix, "residue needs a nonempty index set");
  for (std::size_t i : indices)
    if (i >= g.rank) throw Error(ErrorCode::DimensionMismatch, "residue index out of range");
  CartanGraph out;
  out.rank = indices.size();
  out.lazy = g.lazy;
  std::map<std::size_t, std::size_t> local;
  std::deque<std::size_t> queue{b};
  local[b] = 0;
  std::vector<std::size_t> order{b};
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t i : indices) {
      const auto d = g.rho(c, i);
      if (!d) {
        out.truncated = true;
        continue;
      }
      if (local.count(*d)) continue;
      if (order.size() >= object_budget) {
        out.truncated = true;
        continue;
      }
      local[*d] = order.size();
      order.push_back(*d);
      queue.push_back(*d);
    }
  }
  out.truncated = out.truncated || g.truncated;
  for (std::size_t c : order) {
    CartanObject obj{g.objects[c].name, g.matrix(c).restricted(indices), {}, g.objects[c].chamber};
    for (std::size_t i : indices) {
      const auto d = g.rho(c, i);
      obj.rho.push_back(d && local.count(*d) ? std::optional<std::size_t>(local[*d]) : std::nullopt);
    }
    out.objects.push_back(std::move(obj));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simple connectedness

struct SimplyConnectedReport {
  bool violation = false;
  std::size_t object = 0;
  std::vector<std::size_t> loop_word;  ///< a loop at `object` whose morphism is not the identity
  IntegerMatrix loop_matrix;
  int word_budget = 0;
  bool budget_exhausted = false;  ///< search stopped at the budget rather than at closure
};

/// Searches loops of length <= word_budget for a non-identity element of Hom(a, a).
inline SimplyConnectedReport check_simply_connected(const CartanGraph& g, int word_budget) {
  SimplyConnectedReport report;
  report.word_budget = word_budget;
  const std::size_t r = g.rank;
  for (std::size_t b = 0; b < g.size(); ++b) {
    struct Reached {
      IntegerMatrix m;
      std::vector<std::size_t> word;
    };
    std::map<std::size_t, Reached> reached;
    reached[b] = {identity_matrix(r), {}};
    std::vector<std::size_t> frontier{b};
    for (int len = 1; len <= word_budget && !frontier.empty(); ++len) {
      std::vector<std::size_t> next;
      for (std::size_t c : frontier) {
        for (std::size_t i = 0; i < r; ++i) {
          const auto d = g.rho(c, i);
          if (!d) continue;
          IntegerMatrix m2 = multiply(g.matrix(c).reflection_matrix(i), reached[c].m);
          auto word = reached[c].word;
          word.push_back(i);
          auto it = reached.find(*d);
          if (it == reached.end()) {
            reached[*d] = {std::move(m2), std::move(word)};
            next.push_back(*d);
            continue;
          }
          if (it->second.m == m2) continue;
          // Two paths b -> d with different morphisms: follow one and return along the other.
          std::vector<std::size_t> loop = word;
          for (auto k = it->second.word.rbegin(); k != it->second.word.rend(); ++k) loop.push_back(*k);
          report.violation = true;
          report.object = b;
          report.loop_word = loop;
          report.loop_matrix = path_morphism(g, b, loop).matrix;
          return report;
        }
      }
      frontier = std::move(next);
      if (len == word_budget && !frontier.empty()) report.budget_exhausted = true;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Root system axioms (R1)-(R4)

enum class AxiomStatus { Pass, Fail, InsufficientDepth };

inline std::string_view to_string(AxiomStatus s) {
  switch (s) {
    case AxiomStatus::Pass: return "pass";
    case AxiomStatus::Fail: return "fail";
    case AxiomStatus::InsufficientDepth: return "insufficient_depth";
  }
  return "?";
}

struct AxiomResult {
  AxiomStatus status = AxiomStatus::Pass;
  std::vector<std::string> witnesses;
};

struct AxiomReport {
  AxiomResult r1, r2, r3, r4;
  /// (object, i, j) -> certified m_ij
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> m_values;

  bool all_pass() const {
    return r1.status == AxiomStatus::Pass && r2.status == AxiomStatus::Pass &&
           r3.status == AxiomStatus::Pass && r4.status == AxiomStatus::Pass;
  }
};

namespace detail {

inline void fail(AxiomResult& r, std::string witness) {
  r.status = AxiomStatus::Fail;
  if (r.witnesses.size() < 16) r.witnesses.push_back(std::move(witness));
}

inline void insufficient(AxiomResult& r, std::string witness) {
  if (r.status == AxiomStatus::Pass) r.status = AxiomStatus::InsufficientDepth;
  if (r.witnesses.size() < 16) r.witnesses.push_back(std::move(witness));
}

inline int sign_pattern(const IntegerVector& v) {
  bool pos = false, neg = false;
  for (const auto& x : v) {
    if (x > 0) pos = true;
    if (x < 0) neg = true;
  }
  return pos && neg ? 0 : (neg ? -1 : 1);
}

}  // namespace detail

/// Verifies (R1)-(R4) for the given per-object root sets.
///
/// A root recorded with word length < roots.depth is "depth-safe": its reflections are
/// guaranteed to be present at the neighbouring object. (R4) is only asserted when m_ij
/// is certified by a stabilized rank-two residue; otherwise it is InsufficientDepth.
inline AxiomReport check_root_system_axioms(const CartanGraph& g, const RealRootSet& roots,
                                            int residue_depth = 64) {
  AxiomReport report;
  const std::size_t r = g.rank;
  for (const auto& [a, set] : roots.roots) {
    const std::string at = " at " + g.objects.at(a).name;
    for (const auto& [v, len] : set) {
      if (detail::sign_pattern(v) == 0) detail::fail(report.r1, to_string(v) + at);
      // (R2): multiples of alpha_i other than +-alpha_i
      std::size_t support = 0, idx = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (v[k] != 0) {
          ++support;
          idx = k;
        }
      if (support == 0) detail::fail(report.r2, "zero vector" + at);
      if (support == 1 && abs(v[idx]) != 1) detail::fail(report.r2, to_string(v) + at);
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (int s : {1, -1}) {
        IntegerVector e = unit_integer_vector(r, i);
        e[i] = s;
        if (!set.count(e)) {
          if (roots.complete || s == 1) detail::fail(report.r2, "missing " + to_string(e) + at);
          else detail::insufficient(report.r2, "missing " + to_string(e) + at);
        }
      }
    }
    // (R3)
    for (std::size_t i = 0; i < r; ++i) {
      const auto b = g.rho(a, i);
      if (!b || !roots.roots.count(*b)) {
        detail::insufficient(report.r3, "no roots recorded at rho_" + std::to_string(i + 1) + at);
        continue;
      }
      const auto& target = roots.roots.at(*b);
      const auto& c = g.matrix(a);
      for (const auto& [v, len] : set) {
        if (!roots.complete && len >= roots.depth) continue;
        const auto image = reflect(c, i, v);
        if (!target.count(image)) {
          detail::fail(report.r3, "sigma_" + std::to_string(i + 1) + to_string(v) + " = " + to_string(image) +
                                      " missing" + at);
        }
      }
      const auto& cb = g.matrix(*b);
      for (const auto& [v, len] : target) {
        if (!roots.complete && len >= roots.depth) continue;
        const auto image = reflect(cb, i, v);
        if (!set.count(image)) {
          detail::fail(report.r3, "sigma_" + std::to_string(i + 1) + to_string(v) + " = " + to_string(image) +
                                      " missing" + at);
        }
      }
    }
    // (R4)
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        const auto res = residue(g, a, {i, j});
        const auto local = generate_real_roots(res, 0, residue_depth);
        if (!local.complete) {
          detail::insufficient(report.r4, "m_" + std::to_string(i + 1) + std::to_string(j + 1) +
                                              " not certified finite" + at);
          continue;
        }
        std::size_t m = 0;
        for (const auto& [v, len] : local.at(0))
          if (in_rank_two_cone(v, 0, 1)) ++m;
        report.m_values[{a, i, j}] = m;
        // Walk (rho_i rho_j)^m from a: rho_j first, then rho_i.
        std::vector<std::size_t> word;
        for (std::size_t k = 0; k < m; ++k) {
          word.push_back(j);
          word.push_back(i);
        }
        Morphism w;
        try {
          w = path_morphism(g, a, word);
        } catch (const Error&) {
          detail::insufficient(report.r4, "walk leaves the graph" + at);
          continue;
        }
        const bool returns = g.lazy ? w.matrix == identity_matrix(r) : w.target == a;
        if (!returns) {
          detail::fail(report.r4, "(rho_" + std::to_string(i + 1) + " rho_" + std::to_string(j + 1) + ")^" +
                                      std::to_string(m) + " does not fix" + at);
        }
      }
    }
  }
  return report;
}

}  // namespace weylgpd

#endif  // WEYLGPD_CARTAN_HPP
