#ifndef WEYLGPD_DEMOS_HPP
#define WEYLGPD_DEMOS_HPP

// The F4 double restrictions pi_ij onto phi_i^perp cap phi_j^perp.

#include <array>
#include <set>
#include <string>
#include <vector>

#include "weylgpd/builtins.hpp"
#include "weylgpd/subarr.hpp"

namespace weylgpd::demos {

inline const std::array<std::pair<std::size_t, std::size_t>, 6>& f4_pairs() {
  static const std::array<std::pair<std::size_t, std::size_t>, 6> p{
      {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  return p;
}

/// i, j are 1-based.
inline Restriction f4_restriction(std::size_t i, std::size_t j) {
  const auto phi = builtins::f4_simple_roots();
  return restrict(builtins::table("f4"), {phi.at(i - 1), phi.at(j - 1)});
}

/// One representative per +- pair (first nonzero coordinate positive), sorted.
inline std::vector<Covector> pair_representatives(const std::vector<Covector>& roots) {
  std::set<Covector> reps;
  for (const auto& a : roots) {
    std::size_t k = 0;
    while (k < a.size() && a[k] == 0) ++k;
    if (k == a.size()) continue;
    reps.insert(a[k] > 0 ? a : -a);
  }
  return {reps.begin(), reps.end()};
}

}  // namespace weylgpd::demos

#endif  // WEYLGPD_DEMOS_HPP
