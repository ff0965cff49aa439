#ifndef WEYLGPD_ARRANGEMENT_HPP
#define WEYLGPD_ARRANGEMENT_HPP

// Root-system tables in V* = Q^r, their chambers and the Cartan graph they carry.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weylgpd/cartan.hpp"
#include "weylgpd/error.hpp"
#include "weylgpd/exactlin.hpp"
#include "weylgpd/lp.hpp"

namespace weylgpd {

enum class ConeKind { Spherical, Affine, Truncated };

/// Where the arrangement lives. Affine tables may also carry a truncation depth:
/// chambers within gallery distance `depth` of the seed are exact, nothing beyond is.
struct ConeSpec {
  ConeKind kind = ConeKind::Spherical;
  std::optional<Covector> gamma;
  std::optional<int> depth;

  static ConeSpec spherical() { return {}; }
  static ConeSpec affine(Covector g, std::optional<int> d = std::nullopt) {
    return {ConeKind::Affine, std::move(g), d};
  }
  static ConeSpec truncated(int d) { return {ConeKind::Truncated, std::nullopt, d}; }
};

/// Primitive integer multiple that keeps the orientation of alpha.
template <class Tag>
RationalTuple<Tag> oriented_primitive(const RationalTuple<Tag>& alpha) {
  auto p = primitive_normalize(alpha);
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (alpha[k] == 0) continue;
    if (sgn(alpha[k]) != sgn(p[k])) p = -p;
    break;
  }
  return p;
}

class RootSystemTable {
 public:
  struct Line {
    Covector key;                 ///< primitive, first nonzero coordinate positive
    std::vector<Rational> scales;  ///< positive s with s * key in R, ascending
  };

  RootSystemTable() = default;

  RootSystemTable(std::size_t rank, std::vector<Covector> roots, ConeSpec cone = {},
                  std::optional<std::vector<Covector>> seed = std::nullopt)
      : rank_(rank), cone_(std::move(cone)), seed_(std::move(seed)) {
    for (auto& a : roots) {
      if (a.size() != rank_) throw Error(ErrorCode::DimensionMismatch, "root " + a.to_string() + " has the wrong length");
      if (a.is_zero()) throw Error(ErrorCode::InvalidTable, "0 is not allowed as a root");
      if (members_.insert(a).second) roots_.push_back(std::move(a));
    }
    for (const auto& a : roots_) {
      if (!members_.count(-a)) throw Error(ErrorCode::InvalidTable, "not closed under negation: " + a.to_string());
      const auto key = primitive_normalize(a);
      const Rational s = a[first_nonzero(a)] / key[first_nonzero(a)];
      if (s < 0) continue;
      auto [it, fresh] = line_index_.emplace(key, lines_.size());
      if (fresh) lines_.push_back({key, {}});
      lines_[it->second].scales.push_back(s);
    }
    for (auto& l : lines_) std::sort(l.scales.begin(), l.scales.end());
    if (cone_.gamma && cone_.gamma->size() != rank_) {
      throw Error(ErrorCode::DimensionMismatch, "imaginary root has the wrong length");
    }
    if (cone_.kind == ConeKind::Truncated && !cone_.depth) {
      throw Error(ErrorCode::InvalidTable, "truncated cone needs a depth");
    }
    if (seed_ && seed_->size() != rank_) throw Error(ErrorCode::InvalidTable, "seed must list rank-many roots");
  }

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Covector>& roots() const noexcept { return roots_; }
  const ConeSpec& cone() const noexcept { return cone_; }
  const std::optional<std::vector<Covector>>& seed() const noexcept { return seed_; }
  const std::vector<Line>& lines() const noexcept { return lines_; }
  bool contains(const Covector& a) const { return members_.count(a) > 0; }

  bool reduced() const {
    return std::all_of(lines_.begin(), lines_.end(), [](const Line& l) { return l.scales.size() == 1; });
  }

  std::optional<std::size_t> line_of(const Covector& a) const {
    if (a.is_zero()) return std::nullopt;
    auto it = line_index_.find(primitive_normalize(a));
    if (it == line_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Smallest root on the line of `a` with the same orientation as `a`.
  Covector minimal_on_line(const Covector& a) const {
    const auto l = line_of(a);
    if (!l) throw Error(ErrorCode::RootNotInSystem, a.to_string() + " is not on a hyperplane of the table");
    const auto& line = lines_[*l];
    Covector m = line.scales.front() * line.key;
    return evaluate_orientation(a, line.key) ? m : -m;
  }

 private:
  static std::size_t first_nonzero(const Covector& a) {
    std::size_t k = 0;
    while (a[k] == 0) ++k;
    return k;
  }
  static bool evaluate_orientation(const Covector& a, const Covector& key) {
    const std::size_t k = first_nonzero(key);
    return sgn(a[k]) == sgn(key[k]);
  }

  std::size_t rank_ = 0;
  std::vector<Covector> roots_;
  ConeSpec cone_;
  std::optional<std::vector<Covector>> seed_;
  std::vector<Line> lines_;
  std::map<Covector, std::size_t> line_index_;
  std::set<Covector> members_;
};

// ---------------------------------------------------------------------------
// Chambers

using ChamberId = std::vector<Covector>;

struct Chamber {
  std::vector<Covector> basis;  ///< indexed root basis B^K
  std::vector<Vector> rays;     ///< dual basis: basis[i](rays[j]) = delta_ij
  Vector witness;               ///< sum of the rays, an interior point
  ChamberId id;                 ///< sorted oriented primitive keys of the basis

  /// phi_K coordinates of a covector: lambda_k = alpha(rays[k]).
  std::vector<Rational> coordinates(const Covector& alpha) const {
    std::vector<Rational> out;
    out.reserve(rays.size());
    for (const auto& d : rays) out.push_back(evaluate(alpha, d));
    return out;
  }
};

inline ChamberId chamber_id(const std::vector<Covector>& basis) {
  ChamberId id;
  for (const auto& b : basis) id.push_back(oriented_primitive(b));
  std::sort(id.begin(), id.end());
  return id;
}

inline std::string to_string(const std::vector<Covector>& basis) {
  std::string s = "{";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) s += ", ";
    s += basis[i].to_string();
  }
  return s + "}";
}

inline std::string to_string(const std::vector<Rational>& q) {
  std::string s = "(";
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i) s += ",";
    s += to_string(q[i]);
  }
  return s + ")";
}

namespace detail {

inline int coherent_sign(const std::vector<Rational>& lambda) {
  bool pos = false, neg = false;
  for (const auto& q : lambda) {
    if (q > 0) pos = true;
    if (q < 0) neg = true;
  }
  if (pos && neg) return 0;
  return pos ? 1 : (neg ? -1 : 0);
}

}  // namespace detail

/// Builds the chamber bounded by `basis` and checks that no hyperplane of R cuts it.
inline Chamber make_chamber(const RootSystemTable& table, std::vector<Covector> basis) {
  const std::size_t r = table.rank();
  if (basis.size() != r) throw Error(ErrorCode::SingularBasis, "a chamber basis needs rank-many roots");
  for (const auto& b : basis)
    if (!table.contains(b)) throw Error(ErrorCode::RootNotInSystem, b.to_string() + " is not a root of the table");
  Chamber k;
  k.rays = dual_basis(basis);
  k.basis = std::move(basis);
  k.witness = Vector(r);
  for (const auto& d : k.rays) k.witness += d;
  k.id = chamber_id(k.basis);
  for (const auto& a : table.roots()) {
    if (detail::coherent_sign(k.coordinates(a)) == 0) {
      throw Error(ErrorCode::NotSimplicial, "root " + a.to_string() + " cuts the cone over " + to_string(k.basis));
    }
  }
  if (table.cone().gamma) {
    bool some = false;
    for (const auto& d : k.rays) {
      const Rational g = evaluate(*table.cone().gamma, d);
      if (g < 0) throw Error(ErrorCode::OutsideCone, "cone over " + to_string(k.basis) + " leaves the Tits cone");
      if (g > 0) some = true;
    }
    if (!some) throw Error(ErrorCode::OutsideCone, "cone over " + to_string(k.basis) + " misses the Tits cone");
  }
  return k;
}

/// The irredundant constraints among {alpha : alpha(x) > 0}, one minimal root per line.
inline std::vector<Covector> walls_and_root_basis(const RootSystemTable& table, const Vector& x) {
  std::vector<Covector> positive;
  for (const auto& line : table.lines()) {
    const Rational v = evaluate(line.key, x);
    if (v == 0) throw Error(ErrorCode::OnHyperplane, "point lies on " + line.key.to_string() + "^perp");
    const Covector m = line.scales.front() * line.key;
    positive.push_back(v > 0 ? m : -m);
  }
  std::vector<Covector> walls;
  for (std::size_t k = 0; k < positive.size(); ++k) {
    std::vector<Covector> system;
    for (std::size_t l = 0; l < positive.size(); ++l)
      if (l != k) system.push_back(positive[l]);
    system.push_back(-positive[k]);
    if (table.cone().gamma) system.push_back(*table.cone().gamma);
    if (lp::find_point_in_cone(system, {}, table.rank())) walls.push_back(positive[k]);
  }
  if (walls.size() != table.rank()) {
    throw Error(ErrorCode::NotSimplicial, "chamber of " + x.to_string() + " has " + std::to_string(walls.size()) +
                                              " walls in rank " + std::to_string(table.rank()));
  }
  return walls;
}

inline Chamber chamber_from_point(const RootSystemTable& table, const Vector& x) {
  if (x.size() != table.rank()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong length");
  if (table.cone().gamma && evaluate(*table.cone().gamma, x) <= 0) {
    throw Error(ErrorCode::OutsideCone, x.to_string() + " is not in the Tits cone");
  }
  return make_chamber(table, walls_and_root_basis(table, x));
}

/// Deterministic generic point: weighted sum of the dual basis of the lexicographically
/// first independent roots, weights 1 + i/(r+1).
inline Vector default_generic_point(const RootSystemTable& table) {
  const std::size_t r = table.rank();
  std::vector<Covector> sorted = table.roots();
  std::sort(sorted.begin(), sorted.end());
  std::vector<Covector> chosen;
  for (const auto& a : sorted) {
    chosen.push_back(a);
    if (rank_of(chosen) < chosen.size()) chosen.pop_back();
    if (chosen.size() == r) break;
  }
  if (chosen.size() != r) throw Error(ErrorCode::InvalidTable, "roots do not span V*, the arrangement is degenerate");
  const auto d = dual_basis(chosen);
  for (int t = 0; t < 64; ++t) {
    Vector x(r);
    for (std::size_t i = 0; i < r; ++i) {
      const Rational w = 1 + ratio(long(i + 1), long(r + 1)) + ratio(long(t) * long((i + 1) * (i + 1)), long(7 * (r + 1)));
      x += w * d[i];
    }
    if (table.cone().gamma && evaluate(*table.cone().gamma, x) < 0) x = -x;
    bool generic = !table.cone().gamma || evaluate(*table.cone().gamma, x) > 0;
    for (const auto& line : table.lines())
      if (generic && evaluate(line.key, x) == 0) generic = false;
    if (generic) return x;
  }
  throw Error(ErrorCode::Unsupported, "no generic seed point found");
}

inline Chamber seed_chamber(const RootSystemTable& table) {
  if (table.seed()) return make_chamber(table, *table.seed());
  return chamber_from_point(table, default_generic_point(table));
}

inline bool wall_crossable(const RootSystemTable& table, const Chamber& k, std::size_t i) {
  if (!table.cone().gamma) return true;
  for (std::size_t m = 0; m < k.rays.size(); ++m)
    if (m != i && evaluate(*table.cone().gamma, k.rays[m]) > 0) return true;
  return false;
}

/// Crosses wall i with compatible indexing: beta_i = -alpha_i, and beta_j is the wall of
/// the new chamber inside <alpha_i, alpha_j>, i.e. the root a alpha_i + b alpha_j (b > 0)
/// with the largest ratio a/b (smallest such root if the table is not reduced).
inline Chamber adjacent_chamber(const RootSystemTable& table, const Chamber& k, std::size_t i) {
  const std::size_t r = table.rank();
  if (i >= r) throw Error(ErrorCode::DimensionMismatch, "wall index out of range");
  if (!wall_crossable(table, k, i)) {
    throw Error(ErrorCode::WallOnBoundary, "wall " + std::to_string(i + 1) + " of " + to_string(k.basis) +
                                               " does not meet the Tits cone");
  }
  std::vector<std::vector<Rational>> coords;
  coords.reserve(table.roots().size());
  for (const auto& a : table.roots()) coords.push_back(k.coordinates(a));

  std::vector<Covector> basis(r);
  basis[i] = -k.basis[i];
  for (std::size_t j = 0; j < r; ++j) {
    if (j == i) continue;
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t n = 0; n < coords.size(); ++n) {
      const auto& c = coords[n];
      if (c[j] <= 0 || c[i] < 0) continue;
      bool supported = true;
      for (std::size_t m = 0; m < r && supported; ++m)
        if (m != i && m != j && c[m] != 0) supported = false;
      if (!supported) continue;
      const Rational ratio = c[i] / c[j];
      if (!best || ratio > best_ratio || (ratio == best_ratio && c[j] < coords[*best][j])) {
        best = n;
        best_ratio = ratio;
      }
    }
    // alpha_j itself always qualifies.
    basis[j] = table.roots()[*best];
  }
  return make_chamber(table, std::move(basis));
}

// ---------------------------------------------------------------------------
// Breadth-first chamber exploration

inline constexpr std::size_t kDefaultChamberBudget = 100'000;

struct ChamberComplex {
  std::vector<Chamber> chambers;
  std::vector<std::vector<std::optional<std::size_t>>> neighbors;
  std::vector<int> distance;
  std::vector<std::vector<std::size_t>> word;  ///< crossings from the seed
  std::vector<bool> certified;
  std::map<ChamberId, std::size_t> index;
  bool budget_exceeded = false;

  std::size_t size() const noexcept { return chambers.size(); }
  std::size_t certified_count() const {
    return static_cast<std::size_t>(std::count(certified.begin(), certified.end(), true));
  }
  std::optional<std::size_t> find(const ChamberId& id) const {
    auto it = index.find(id);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// A chamber is certified when it lies strictly inside the truncation depth and all its
/// neighbours were computed.
inline ChamberComplex explore_chambers(const RootSystemTable& table, const Chamber& seed,
                                       std::size_t chamber_budget = kDefaultChamberBudget) {
  const std::size_t r = table.rank();
  const auto limit = table.cone().depth;
  ChamberComplex cx;
  auto add = [&](Chamber k, int dist, std::vector<std::size_t> word) {
    cx.index.emplace(k.id, cx.chambers.size());
    cx.chambers.push_back(std::move(k));
    cx.neighbors.emplace_back(r);
    cx.distance.push_back(dist);
    cx.word.push_back(std::move(word));
  };
  add(seed, 0, {});
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    if (limit && cx.distance[c] >= *limit) continue;
    for (std::size_t i = 0; i < r; ++i) {
      if (cx.neighbors[c][i]) continue;
      std::optional<Chamber> next;
      try {
        next = adjacent_chamber(table, cx.chambers[c], i);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WallOnBoundary) throw;
        continue;
      }
      std::size_t d;
      if (auto found = cx.find(next->id)) {
        d = *found;
        if (cx.chambers[d].basis != next->basis) {
          throw Error(ErrorCode::Mismatch, "compatible indexing of " + to_string(next->basis) + " depends on the gallery");
        }
      } else {
        if (cx.size() >= chamber_budget) {
          cx.budget_exceeded = true;
          continue;
        }
        auto word = cx.word[c];
        word.push_back(i);
        d = cx.size();
        add(std::move(*next), cx.distance[c] + 1, std::move(word));
        queue.push_back(d);
      }
      cx.neighbors[c][i] = d;
      if (!cx.neighbors[d][i]) cx.neighbors[d][i] = c;
    }
  }
  cx.certified.resize(cx.size());
  for (std::size_t c = 0; c < cx.size(); ++c) {
    bool ok = !limit || cx.distance[c] < *limit;
    for (std::size_t i = 0; i < r && ok; ++i) ok = cx.neighbors[c][i].has_value();
    cx.certified[c] = ok;
  }
  return cx;
}

inline ChamberComplex explore_chambers(const RootSystemTable& table,
                                       std::size_t chamber_budget = kDefaultChamberBudget) {
  return explore_chambers(table, seed_chamber(table), chamber_budget);
}

// ---------------------------------------------------------------------------
// Cartan matrix at a chamber

struct ChamberCartanData {
  ChamberId id;
  GeneralizedCartanMatrix cartan;
  /// transition[i][j] = a with beta_j = a alpha_i + alpha_j across wall i (-2 on the diagonal)
  std::vector<std::vector<Rational>> transition;
};

/// Coefficients (a, b) of beta_j = a alpha_i + b alpha_j where beta is L's compatible basis.
inline std::vector<std::pair<Rational, Rational>> crossing_coefficients(const Chamber& k, const Chamber& l,
                                                                        std::size_t i) {
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t j = 0; j < k.basis.size(); ++j) {
    const auto c = k.coordinates(l.basis[j]);
    out.emplace_back(c[i], c[j]);
  }
  return out;
}

namespace detail {

inline ChamberCartanData cartan_from_neighbors(const Chamber& k, const std::vector<const Chamber*>& nbrs) {
  const std::size_t r = k.basis.size();
  IntegerMatrix c(r, std::vector<Integer>(r, Integer(0)));
  std::vector<std::vector<Rational>> transition(r, std::vector<Rational>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const auto coeffs = crossing_coefficients(k, *nbrs[i], i);
    for (std::size_t j = 0; j < r; ++j) {
      const auto& [a, b] = coeffs[j];
      transition[i][j] = a;
      if (j == i) {
        c[i][i] = 2;
        transition[i][i] = -2;
        continue;
      }
      if (b != 1 || !is_integer(a) || a < 0) {
        throw Error(ErrorCode::NotCrystallographicAt,
                    "chamber " + to_string(k.basis) + ", wall " + std::to_string(i + 1) + ": " +
                        nbrs[i]->basis[j].to_string() + " = " + to_string(a) + "*" + k.basis[i].to_string() + " + " +
                        to_string(b) + "*" + k.basis[j].to_string());
      }
      c[i][j] = -a.get_num();
    }
  }
  return {k.id, GeneralizedCartanMatrix(std::move(c)), std::move(transition)};
}

}  // namespace detail

inline ChamberCartanData cartan_matrix_at(const RootSystemTable& table, const Chamber& k) {
  std::vector<Chamber> nbrs;
  for (std::size_t i = 0; i < table.rank(); ++i) nbrs.push_back(adjacent_chamber(table, k, i));
  std::vector<const Chamber*> ptrs;
  for (const auto& n : nbrs) ptrs.push_back(&n);
  return detail::cartan_from_neighbors(k, ptrs);
}

// ---------------------------------------------------------------------------
// Property checks

struct Witness {
  std::size_t chamber = 0;
  std::vector<Covector> basis;
  Covector root;
  std::vector<Rational> coordinates;
  bool certified = false;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  bool passed = true;
  bool budget_exceeded = false;
  std::size_t chambers_visited = 0;
  std::size_t chambers_certified = 0;
  std::vector<Witness> witnesses;
};

inline constexpr std::size_t kMaxWitnesses = 64;

/// Every root must have integer phi_K coordinates of one sign, at every visited chamber.
inline PropertyReport check_crystallographic(const RootSystemTable& table, const ChamberComplex& cx) {
  PropertyReport rep;
  rep.property = "crystallographic";
  rep.budget_exceeded = cx.budget_exceeded;
  rep.chambers_visited = cx.size();
  rep.chambers_certified = cx.certified_count();
  for (std::size_t c = 0; c < cx.size(); ++c) {
    const auto& k = cx.chambers[c];
    for (const auto& a : table.roots()) {
      auto lambda = k.coordinates(a);
      const bool integral = std::all_of(lambda.begin(), lambda.end(), [](const Rational& q) { return is_integer(q); });
      if (integral && detail::coherent_sign(lambda) != 0) continue;
      rep.passed = false;
      if (rep.witnesses.size() < kMaxWitnesses) {
        rep.witnesses.push_back({c, k.basis, a, std::move(lambda), cx.certified[c],
                                 integral ? "mixed signs" : "non-integral coefficient"});
      }
    }
  }
  return rep;
}

inline PropertyReport check_crystallographic(const RootSystemTable& table,
                                             std::size_t chamber_budget = kDefaultChamberBudget) {
  return check_crystallographic(table, explore_chambers(table, chamber_budget));
}

/// Each positive root is a basis element or a sum of two positive roots. Failures at
/// uncertified chambers are listed but do not fail the check.
inline PropertyReport check_additive(const RootSystemTable& table, const ChamberComplex& cx) {
  PropertyReport rep;
  rep.property = "additive";
  rep.budget_exceeded = cx.budget_exceeded;
  rep.chambers_visited = cx.size();
  rep.chambers_certified = cx.certified_count();
  for (std::size_t c = 0; c < cx.size(); ++c) {
    const auto& k = cx.chambers[c];
    std::set<std::vector<Rational>> positive;
    std::vector<std::pair<Covector, std::vector<Rational>>> listed;
    for (const auto& a : table.roots()) {
      auto lambda = k.coordinates(a);
      if (detail::coherent_sign(lambda) > 0) {
        positive.insert(lambda);
        listed.emplace_back(a, std::move(lambda));
      }
    }
    for (const auto& [a, lambda] : listed) {
      if (std::find(k.basis.begin(), k.basis.end(), a) != k.basis.end()) continue;
      bool found = false;
      for (const auto& p : positive) {
        std::vector<Rational> rest(lambda.size());
        for (std::size_t m = 0; m < lambda.size(); ++m) rest[m] = lambda[m] - p[m];
        if (positive.count(rest)) {
          found = true;
          break;
        }
      }
      if (found) continue;
      if (cx.certified[c]) rep.passed = false;
      if (rep.witnesses.size() < kMaxWitnesses) {
        rep.witnesses.push_back({c, k.basis, a, lambda, cx.certified[c], "neither a basis root nor a sum of two"});
      }
    }
  }
  return rep;
}

inline PropertyReport check_additive(const RootSystemTable& table,
                                     std::size_t chamber_budget = kDefaultChamberBudget) {
  return check_additive(table, explore_chambers(table, chamber_budget));
}

/// Every codim-k face of every visited chamber meets the open cone gamma^+.
inline PropertyReport check_k_spherical(const RootSystemTable& table, std::size_t k,
                                        std::size_t chamber_budget = kDefaultChamberBudget) {
  PropertyReport rep;
  rep.property = "k-spherical";
  if (table.cone().kind == ConeKind::Truncated) {
    throw Error(ErrorCode::Unsupported, "k-sphericity needs a spherical or affine cone");
  }
  const std::size_t r = table.rank();
  if (k > r) throw Error(ErrorCode::DimensionMismatch, "k exceeds the rank");
  if (!table.cone().gamma) return rep;  // T = V, every face meets it
  const auto cx = explore_chambers(table, chamber_budget);
  rep.budget_exceeded = cx.budget_exceeded;
  rep.chambers_visited = cx.size();
  rep.chambers_certified = cx.certified_count();
  for (std::size_t c = 0; c < cx.size(); ++c) {
    const auto& ch = cx.chambers[c];
    // Subsets J of size k as bitmasks; the face is spanned by the rays outside J.
    std::vector<bool> mask(r, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
    do {
      bool meets = false;
      for (std::size_t m = 0; m < r && !meets; ++m)
        if (!mask[m] && evaluate(*table.cone().gamma, ch.rays[m]) > 0) meets = true;
      if (meets) continue;
      rep.passed = false;
      std::string face;
      for (std::size_t m = 0; m < r; ++m)
        if (mask[m]) face += (face.empty() ? "" : ",") + std::to_string(m + 1);
      if (rep.witnesses.size() < kMaxWitnesses) {
        rep.witnesses.push_back({c, ch.basis, Covector(r), {}, cx.certified[c], "face cut out by walls {" + face + "} misses T"});
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Cartan graph of an arrangement

struct ExtractedGraph {
  CartanGraph graph;
  ChamberComplex complex;
  std::vector<std::size_t> chamber_of;  ///< object -> chamber index
  std::map<std::size_t, std::size_t> object_of;
  std::vector<std::set<IntegerVector>> roots;  ///< R^K = phi_K(R)
  std::vector<ChamberCartanData> cartan;
};

/// Objects are the certified chambers; rho_i is adjacency, C^K comes from compatible indexing.
inline ExtractedGraph extract_cartan_graph(const RootSystemTable& table, const Chamber& seed,
                                           std::size_t chamber_budget = kDefaultChamberBudget) {
  ExtractedGraph out;
  out.complex = explore_chambers(table, seed, chamber_budget);
  const auto& cx = out.complex;
  const std::size_t r = table.rank();
  for (std::size_t c = 0; c < cx.size(); ++c) {
    if (!cx.certified[c]) continue;
    out.object_of[c] = out.chamber_of.size();
    out.chamber_of.push_back(c);
  }
  out.graph.rank = r;
  out.graph.truncated = out.chamber_of.size() != cx.size() || cx.budget_exceeded;
  for (std::size_t o = 0; o < out.chamber_of.size(); ++o) {
    const std::size_t c = out.chamber_of[o];
    const auto& k = cx.chambers[c];
    std::vector<const Chamber*> nbrs;
    for (std::size_t i = 0; i < r; ++i) nbrs.push_back(&cx.chambers[*cx.neighbors[c][i]]);
    auto data = detail::cartan_from_neighbors(k, nbrs);
    CartanObject obj{"K" + std::to_string(c), data.cartan, {}, k.basis};
    for (std::size_t i = 0; i < r; ++i) {
      auto it = out.object_of.find(*cx.neighbors[c][i]);
      obj.rho.push_back(it == out.object_of.end() ? std::nullopt : std::optional<std::size_t>(it->second));
    }
    out.graph.objects.push_back(std::move(obj));
    out.cartan.push_back(std::move(data));
    std::set<IntegerVector> rk;
    for (const auto& a : table.roots()) {
      auto lambda = k.coordinates(a);
      auto v = to_integer_vector(lambda);
      if (!v) {
        throw Error(ErrorCode::NotCrystallographicAt,
                    "chamber " + to_string(k.basis) + ": " + a.to_string() + " has coordinates " + to_string(lambda));
      }
      rk.insert(std::move(*v));
    }
    out.roots.push_back(std::move(rk));
  }
  const auto report = check_cartan_graph(out.graph);
  if (!report.valid()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::AxiomViolation, "(" + v.axiom + ") " + v.detail);
  }
  return out;
}

inline ExtractedGraph extract_cartan_graph(const RootSystemTable& table,
                                           std::size_t chamber_budget = kDefaultChamberBudget) {
  return extract_cartan_graph(table, seed_chamber(table), chamber_budget);
}

// ---------------------------------------------------------------------------
// Distances and galleries

struct Gallery {
  std::vector<std::size_t> chambers;
  std::vector<std::size_t> crossings;
};

/// Hyperplanes (line indices) separating two chambers.
inline std::vector<std::size_t> separating_lines(const RootSystemTable& table, const Chamber& a, const Chamber& b) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < table.lines().size(); ++l) {
    const auto& key = table.lines()[l].key;
    if (sgn(evaluate(key, a.witness)) != sgn(evaluate(key, b.witness))) out.push_back(l);
  }
  return out;
}

/// Separation count and a greedy gallery crossing the lowest-index separating wall first.
inline std::pair<std::size_t, Gallery> distance_and_gallery(const RootSystemTable& table, const ChamberComplex& cx,
                                                            std::size_t from, std::size_t to) {
  const auto& target = cx.chambers.at(to);
  const std::size_t d = separating_lines(table, cx.chambers.at(from), target).size();
  Gallery g{{from}, {}};
  std::size_t c = from;
  while (c != to) {
    if (g.crossings.size() > cx.size()) throw Error(ErrorCode::Unreachable, "gallery does not terminate");
    const auto& k = cx.chambers[c];
    std::optional<std::size_t> wall;
    for (std::size_t i = 0; i < k.basis.size() && !wall; ++i)
      if (evaluate(k.basis[i], target.witness) < 0) wall = i;
    if (!wall || !cx.neighbors[c][*wall]) {
      throw Error(ErrorCode::Unreachable, "gallery leaves the explored region at " + to_string(k.basis));
    }
    c = *cx.neighbors[c][*wall];
    g.chambers.push_back(c);
    g.crossings.push_back(*wall);
  }
  return {d, std::move(g)};
}

inline std::vector<Vector> radical(const RootSystemTable& table) {
  return kernel(std::span<const Covector>(table.roots()), table.rank());
}

inline bool is_nondegenerate(const RootSystemTable& table) { return radical(table).empty(); }

}  // namespace weylgpd

#endif  // WEYLGPD_ARRANGEMENT_HPP
