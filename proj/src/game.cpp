#include "coopstab/game.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "coopstab/errors.hpp"
#include "coopstab/tsp.hpp"

namespace coopstab {

const char* to_string(GameKind kind) {
  switch (kind) {
    case GameKind::Table: return "table";
    case GameKind::Tsg: return "tsg";
    case GameKind::Mcst: return "mcst";
    case GameKind::GrandPerturbed: return "grand-perturbed";
    case GameKind::ProperPerturbed: return "proper-perturbed";
  }
  return "unknown";
}

// Dense atomic slots (NaN = not yet computed) up to the table cap, a locked
// map above it.
struct CostGame::Cache {
  explicit Cache(int players) {
    if (players <= kCapCostTable) {
      const std::size_t size = std::size_t{1} << players;
      dense = std::make_unique<std::atomic<double>[]>(size);
      for (std::size_t i = 0; i < size; ++i) dense[i].store(std::numeric_limits<double>::quiet_NaN());
    }
  }

  std::optional<double> find(Coalition::Mask m) {
    if (dense) {
      const double v = dense[m].load(std::memory_order_acquire);
      if (std::isnan(v)) return std::nullopt;
      return v;
    }
    std::lock_guard lock(mutex);
    auto it = sparse.find(m);
    if (it == sparse.end()) return std::nullopt;
    return it->second;
  }

  double store(Coalition::Mask m, double value) {
    if (dense) {
      // Oracles are deterministic, so racing writers store the same value.
      dense[m].store(value, std::memory_order_release);
      return value;
    }
    std::lock_guard lock(mutex);
    return sparse.try_emplace(m, value).first->second;
  }

  std::unique_ptr<std::atomic<double>[]> dense;
  std::mutex mutex;
  std::unordered_map<Coalition::Mask, double> sparse;
};

CostGame::CostGame(GameKind kind, int players)
    : kind_(kind), players_(players), cache_(std::make_unique<Cache>(players)) {}
CostGame::CostGame(CostGame&&) noexcept = default;
CostGame& CostGame::operator=(CostGame&&) noexcept = default;
CostGame::~CostGame() = default;

CostGame CostGame::table(int n, std::vector<double> costs) {
  if (n < 1 || n > kMaxPlayers) throw DomainError("player count must be in 1..31");
  if (n > 24) throw CapacityError("explicit tables limited to 24 players", 24);
  if (costs.size() != (std::size_t{1} << n))
    throw ShapeError("explicit table needs 2^n entries indexed by coalition mask");
  for (std::size_t s = 1; s < costs.size(); ++s)
    if (!(costs[s] >= 0.0) || !std::isfinite(costs[s]))
      throw DomainError("coalition costs must be finite and nonnegative");
  costs[0] = 0.0;
  CostGame g(GameKind::Table, n);
  g.table_ = std::move(costs);
  return g;
}

CostGame CostGame::tsg(DistanceMatrix d) {
  CostGame g(GameKind::Tsg, d.players());
  g.distances_ = std::move(d);
  return g;
}

CostGame CostGame::mcst(DistanceMatrix d) {
  if (!d.symmetric()) throw DomainError("spanning-tree games need a symmetric distance matrix");
  CostGame g(GameKind::Mcst, d.players());
  g.distances_ = std::move(d);
  return g;
}

CostGame CostGame::grand_perturbed(std::shared_ptr<const CostGame> base, double eps) {
  if (!base) throw DomainError("perturbed game needs a base game");
  if (!(eps >= 0.0) || eps > base->grand_cost())
    throw DomainError("grand perturbation needs 0 <= eps <= c(N)");
  CostGame g(GameKind::GrandPerturbed, base->players());
  g.base_ = std::move(base);
  g.epsilon_ = eps;
  return g;
}

CostGame CostGame::proper_perturbed(std::shared_ptr<const CostGame> base, double eps) {
  if (!base) throw DomainError("perturbed game needs a base game");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("proper perturbation needs eps >= 0");
  CostGame g(GameKind::ProperPerturbed, base->players());
  g.base_ = std::move(base);
  g.epsilon_ = eps;
  return g;
}

double CostGame::compute(Coalition s) const {
  switch (kind_) {
    case GameKind::Table: return table_[s.mask()];
    case GameKind::Tsg: return tsp_exact(*distances_, s).cost;
    case GameKind::Mcst: return mst(*distances_, s).cost;
    case GameKind::GrandPerturbed: {
      const double c = base_->cost(s);
      return s.is_grand() ? c - epsilon_ : c;
    }
    case GameKind::ProperPerturbed: {
      const double c = base_->cost(s);
      return s.is_grand() ? c : c + epsilon_;
    }
  }
  return 0.0;
}

double CostGame::cost(Coalition s) const {
  if (s.players() != players_) throw ShapeError("coalition universe does not match the game");
  if (s.empty()) throw DomainError("cost is undefined for the empty coalition");
  if (kind_ == GameKind::Table) return table_[s.mask()];
  if (auto hit = cache_->find(s.mask())) return *hit;
  return cache_->store(s.mask(), compute(s));
}

std::vector<double> all_costs(const CostGame& g, int jobs) {
  const int n = g.players();
  if (n > kCapCostTable) throw CapacityError("full cost table limited to 16 players", kCapCostTable);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> costs(subsets, 0.0);

  if (g.kind() == GameKind::Tsg && !g.cache_->find(Coalition::full_mask(n))) {
    const std::vector<double> swept = all_tour_costs(*g.distances());
    for (std::size_t s = 1; s < subsets; ++s) g.cache_->store(static_cast<Coalition::Mask>(s), swept[s]);
  }

  auto fill = [&](std::size_t first, std::size_t stride) {
    for (std::size_t s = first; s < subsets; s += stride)
      costs[s] = g.cost(Coalition(n, static_cast<Coalition::Mask>(s)));
  };
  jobs = std::max(1, jobs);
  if (jobs == 1 || g.kind() == GameKind::Table) {
    fill(1, 1);
  } else {
    std::vector<std::jthread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          fill(1 + static_cast<std::size_t>(w), static_cast<std::size_t>(jobs));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    workers.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return costs;
}

SubadditivityReport is_subadditive(const CostGame& g, double tol) {
  const int n = g.players();
  if (n > kCapSubadditivity) throw CapacityError("subadditivity scan limited to 12 players", kCapSubadditivity);
  const std::vector<double> c = all_costs(g);
  const std::size_t subsets = c.size();
  for (std::size_t s = 1; s < subsets; ++s)
    for (std::size_t t = s; t < subsets; ++t)
      if (c[s] + c[t] < c[s | t] - tol)
        return {false, std::pair{Coalition(n, static_cast<Coalition::Mask>(s)),
                                 Coalition(n, static_cast<Coalition::Mask>(t))}};
  return {};
}

Eigen::VectorXd marginal_costs(const CostGame& g) {
  const int n = g.players();
  if (n < 2) throw DomainError("marginal costs need at least two players");
  const Coalition grand = g.grand();
  const double c_grand = g.cost(grand);
  Eigen::VectorXd m(n);
  for (int i = 1; i <= n; ++i) m(i - 1) = c_grand - g.cost(grand.without(i));
  return m;
}

Eigen::VectorXd individual_rationalities(const CostGame& g) {
  const int n = g.players();
  Eigen::VectorXd ir(n);
  for (int i = 1; i <= n; ++i) ir(i - 1) = g.cost(Coalition::singleton(n, i));
  return ir;
}

CostGame reference_game_g3() {
  std::vector<double> c(8, 0.0);
  for (Coalition::Mask s = 1; s < 8; ++s) {
    const int size = std::popcount(s);
    c[s] = size == 1 ? 6.0 : size == 2 ? 5.0 : 10.0;
  }
  return CostGame::table(3, std::move(c));
}

}  // namespace coopstab
