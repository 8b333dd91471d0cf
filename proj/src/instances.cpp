#include "coopstab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "coopstab/errors.hpp"
#include "coopstab/semicore_analysis.hpp"

namespace coopstab {

const char* to_string(TableFamily f) { return f == TableFamily::Mixed ? "mixed" : "semicore-stressed"; }

CostGame covering_game(int n, const std::vector<std::pair<Coalition::Mask, double>>& priced_sets) {
  if (n < 1 || n > kCapCostTable) throw CapacityError("covering games limited to 16 players", kCapCostTable);
  const Coalition::Mask full = Coalition::full_mask(n);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> cover(subsets, std::numeric_limits<double>::infinity());
  cover[0] = 0.0;
  for (std::size_t s = 1; s < subsets; ++s) {
    const auto lowest = static_cast<Coalition::Mask>(s & (~s + 1));
    for (const auto& [set, price] : priced_sets) {
      if ((set & lowest) == 0) continue;
      cover[s] = std::min(cover[s], price + cover[s & ~static_cast<std::size_t>(set & full)]);
    }
    if (!std::isfinite(cover[s])) throw DomainError("priced sets do not cover every player");
  }
  return CostGame::table(n, std::move(cover));
}

CostGame random_subadditive_table(int n, std::uint64_t seed, TableFamily family) {
  if (n < 1 || n > kCapCostTable) throw CapacityError("random tables limited to 16 players", kCapCostTable);
  std::mt19937_64 engine(seed);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * uniform01(engine); };
  const Coalition::Mask full = Coalition::full_mask(n);

  std::vector<std::pair<Coalition::Mask, double>> sets;
  for (int i = 0; i < n; ++i) sets.emplace_back(Coalition::Mask{1} << i, 100.0 * uniform(0.55, 1.0));
  if (family == TableFamily::SemicoreStressed)
    for (int i = 0; i < n; ++i) sets.emplace_back(full & ~(Coalition::Mask{1} << i), 100.0 * uniform(0.9, 1.1));
  const double exponent = uniform(0.4, 0.9);
  for (int e = 0; e < 2 * n; ++e) {
    Coalition::Mask set = 0;
    while (std::popcount(set) < 2) set = static_cast<Coalition::Mask>(engine()) & full;
    const double size = std::popcount(set);
    sets.emplace_back(set, 100.0 * std::pow(size, exponent) * uniform(0.8, 1.2));
  }
  return covering_game(n, sets);
}

TsgSearchResult find_empty_semicore_tsg(int n, std::uint64_t seed, bool symmetric, int max_attempts, double tol) {
  if (n < 2) throw DomainError("semicore search needs at least two players");
  TsgSearchResult out;
  for (int a = 0; a < max_attempts; ++a) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(a);
    DistanceMatrix d = symmetric ? gen_euclidean(n, s) : gen_asymmetric_metric(n, s);
    out.attempts = a + 1;
    if (semicore_empty_criterion(CostGame::tsg(d), tol)) {
      out.instance = std::move(d);
      return out;
    }
  }
  return out;
}

}  // namespace coopstab
