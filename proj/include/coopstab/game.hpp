#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "coopstab/coalition.hpp"
#include "coopstab/metric.hpp"

namespace coopstab {

// Tolerance for cost and constraint comparisons.
inline constexpr double kTolLp = 1e-7;

inline constexpr int kCapCostTable = 16;
inline constexpr int kCapSubadditivity = 12;

enum class GameKind { Table, Tsg, Mcst, GrandPerturbed, ProperPerturbed };

const char* to_string(GameKind kind);

// Coalition -> cost oracle with a memo table. Cost queries are thread-safe:
// concurrent fills of the same coalition store one value, and every cached
// value is immutable once written.
class CostGame {
 public:
  // `costs` is indexed by coalition mask and has 2^n entries; entry 0 is
  // ignored. Costs must be finite and nonnegative.
  static CostGame table(int n, std::vector<double> costs);
  static CostGame tsg(DistanceMatrix d);
  static CostGame mcst(DistanceMatrix d);
  // cost(N) = base(N) - eps, other coalitions unchanged; 0 <= eps <= base(N).
  static CostGame grand_perturbed(std::shared_ptr<const CostGame> base, double eps);
  // cost(S) = base(S) + eps for every proper S, cost(N) unchanged; eps >= 0.
  static CostGame proper_perturbed(std::shared_ptr<const CostGame> base, double eps);

  CostGame(CostGame&&) noexcept;
  CostGame& operator=(CostGame&&) noexcept;
  ~CostGame();

  int players() const { return players_; }
  GameKind kind() const { return kind_; }
  Coalition grand() const { return Coalition::grand(players_); }

  // Throws DomainError for the empty coalition; oracle capacity errors
  // propagate.
  double cost(Coalition s) const;
  double grand_cost() const { return cost(grand()); }

  // Distances behind a TSG or MCST game, nullptr otherwise.
  const DistanceMatrix* distances() const { return distances_ ? &*distances_ : nullptr; }
  const CostGame* base() const { return base_.get(); }
  double epsilon() const { return epsilon_; }

 private:
  struct Cache;

  CostGame(GameKind kind, int players);
  double compute(Coalition s) const;
  friend std::vector<double> all_costs(const CostGame& g, int jobs);

  GameKind kind_;
  int players_;
  std::vector<double> table_;
  std::optional<DistanceMatrix> distances_;
  std::shared_ptr<const CostGame> base_;
  double epsilon_ = 0.0;
  std::unique_ptr<Cache> cache_;
};

// Full table over all 2^n - 1 coalitions, indexed by mask (entry 0 is 0).
// TSG games use one subset sweep; other kinds fill coalitions on `jobs`
// threads. Throws CapacityError for n > 16.
std::vector<double> all_costs(const CostGame& g, int jobs = 1);

struct SubadditivityReport {
  bool subadditive = true;
  std::optional<std::pair<Coalition, Coalition>> witness;
};

// Checks c(S) + c(S') >= c(S u S') - tol over every pair of nonempty subsets,
// overlapping ones included. Throws CapacityError for n > 12.
SubadditivityReport is_subadditive(const CostGame& g, double tol = kTolLp);

// c(N) - c(N \ {i}) for each player; needs n >= 2.
Eigen::VectorXd marginal_costs(const CostGame& g);

// c({i}) for each player.
Eigen::VectorXd individual_rationalities(const CostGame& g);

// The three-player reference game: singletons 6, pairs 5, grand coalition 10.
CostGame reference_game_g3();

}  // namespace coopstab
