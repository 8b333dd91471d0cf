#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "coopstab/game.hpp"
#include "coopstab/metric.hpp"

namespace coopstab {

// Covering game: c(S) is the cheapest collection of priced sets whose union
// contains S. Covering games are monotone and subadditive. The priced sets
// must cover every player.
CostGame covering_game(int n, const std::vector<std::pair<Coalition::Mask, double>>& priced_sets);

enum class TableFamily {
  // Priced singletons plus 2n random sets with concave-in-size prices.
  Mixed,
  // Additionally prices every (n-1)-set cheaply, which tends to empty the
  // semicore.
  SemicoreStressed,
};

const char* to_string(TableFamily f);

// Seeded random covering game (explicit table), n <= 16.
CostGame random_subadditive_table(int n, std::uint64_t seed, TableFamily family);

// Rejection sampling over seeds seed, seed+1, ... for a TSG whose semicore is
// empty by the marginal-cost criterion. Asymmetric instances come from
// gen_asymmetric_metric, symmetric ones from gen_euclidean.
struct TsgSearchResult {
  std::optional<DistanceMatrix> instance;
  int attempts = 0;
};
TsgSearchResult find_empty_semicore_tsg(int n, std::uint64_t seed, bool symmetric, int max_attempts,
                                        double tol = kTolLp);

}  // namespace coopstab
