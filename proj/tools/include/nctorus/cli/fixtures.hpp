#pragma once

// Small group actions used by the acceptance suite and the tests.

#include <cstddef>
#include <vector>

#include "nctorus/automorphy.hpp"

namespace nctorus::fixtures {

/// Symmetric group on three letters as permutations of {0,1,2}, composed right to left.
inline GroupTable symmetric3() {
  const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto index = [&](const std::vector<int>& p) {
    for (std::size_t i = 0; i < perms.size(); ++i) {
      if (perms[i] == p) return i;
    }
    return perms.size();
  };
  std::vector<std::vector<std::size_t>> mul(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      mul[a][b] = index(c);
    }
  }
  return GroupTable(std::move(mul));
}

/// S3 acting on {0,1,2} by its defining permutations.
inline GammaAction symmetric3_action() {
  const std::vector<std::vector<std::size_t>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  return GammaAction(symmetric3(), perms);
}

/// Z/n acting on m points by x -> x + k (m / n); needs n | m.
inline GammaAction rotation_action(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> act(n, std::vector<std::size_t>(m));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t x = 0; x < m; ++x) act[k][x] = (x + k * (m / n)) % m;
  }
  return GammaAction(GroupTable::cyclic(n), std::move(act));
}

/// Actions with |G| <= 6 and |X| <= 8.
inline std::vector<GammaAction> action_zoo() {
  return {GammaAction::trivial(GroupTable::cyclic(2), 1), GammaAction::trivial(GroupTable::cyclic(3), 4),
          rotation_action(2, 4), rotation_action(3, 6), rotation_action(4, 8), rotation_action(6, 6),
          symmetric3_action(), GammaAction::trivial(symmetric3(), 2)};
}

}  // namespace nctorus::fixtures
