#include "coopstab/tsp.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#include "coopstab/errors.hpp"

namespace coopstab {

namespace {

std::atomic<std::uint64_t> g_tsp_solves{0};

void require_matching(const DistanceMatrix& d, Coalition s) {
  if (s.players() != d.players()) throw ShapeError("coalition universe does not match the distance matrix");
  if (s.empty()) throw DomainError("coalition must be nonempty");
}

void require_symmetric(const DistanceMatrix& d) {
  if (!d.symmetric()) throw DomainError("spanning-tree operations need a symmetric distance matrix");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Suffix table over `nodes`: best[r * k + j] is the cheapest path that starts
// at nodes[j], visits every node of the local subset r and ends at the depot.
std::vector<double> suffix_table(const DistanceMatrix& d, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  const std::size_t subsets = std::size_t{1} << k;
  std::vector<double> best(subsets * k, kInf);
  for (int j = 0; j < k; ++j) best[j] = d(nodes[j], 0);
  for (std::size_t r = 1; r < subsets; ++r) {
    for (int j = 0; j < k; ++j) {
      if ((r >> j) & 1u) continue;
      double value = kInf;
      for (std::size_t rest = r; rest != 0; rest &= rest - 1) {
        const int l = std::countr_zero(rest);
        const double via = d(nodes[j], nodes[l]) + best[(r & ~(std::size_t{1} << l)) * k + l];
        value = std::min(value, via);
      }
      best[r * k + j] = value;
    }
  }
  return best;
}

}  // namespace

double tour_cost(const DistanceMatrix& d, std::span<const int> order) {
  if (order.size() < 2) return 0.0;
  double total = 0.0;
  for (std::size_t t = order.size() - 1; t-- > 0;) total = d(order[t], order[t + 1]) + total;
  return total;
}

Tour tsp_exact(const DistanceMatrix& d, Coalition s) {
  require_matching(d, s);
  if (s.size() > kCapExactTour) throw CapacityError("exact tour limited to 16 players", kCapExactTour);
  ++g_tsp_solves;
  const std::vector<int> nodes = s.members();
  const int k = static_cast<int>(nodes.size());
  const std::vector<double> best = suffix_table(d, nodes);
  const std::size_t full = (std::size_t{1} << k) - 1;

  double optimum = kInf;
  for (int j = 0; j < k; ++j)
    optimum = std::min(optimum, d(0, nodes[j]) + best[(full & ~(std::size_t{1} << j)) * k + j]);

  Tour tour;
  tour.order.reserve(k + 2);
  tour.order.push_back(0);
  std::size_t remaining = full;
  int current = -1;
  double target = optimum;
  while (remaining != 0) {
    int next = -1;
    for (std::size_t rest = remaining; rest != 0; rest &= rest - 1) {
      const int l = std::countr_zero(rest);
      const double head = current < 0 ? d(0, nodes[l]) : d(nodes[current], nodes[l]);
      if (head + best[(remaining & ~(std::size_t{1} << l)) * k + l] == target) {
        next = l;
        break;
      }
    }
    remaining &= ~(std::size_t{1} << next);
    target = best[remaining * k + next];
    current = next;
    tour.order.push_back(nodes[next]);
  }
  tour.order.push_back(0);
  tour.cost = tour_cost(d, tour.order);
  return tour;
}

Tour tsp_bruteforce(const DistanceMatrix& d, Coalition s) {
  require_matching(d, s);
  if (s.size() > kCapBruteforceTour)
    throw CapacityError("brute-force tour limited to 9 players", kCapBruteforceTour);
  ++g_tsp_solves;
  std::vector<int> order;
  order.push_back(0);
  for (int p : s.members()) order.push_back(p);
  order.push_back(0);

  Tour tour{order, tour_cost(d, order)};
  while (std::next_permutation(order.begin() + 1, order.end() - 1)) {
    const double c = tour_cost(d, order);
    if (c < tour.cost) tour = Tour{order, c};
  }
  return tour;
}

std::vector<double> all_tour_costs(const DistanceMatrix& d) {
  const int n = d.players();
  if (n > kCapExactTour) throw CapacityError("full tour table limited to 16 players", kCapExactTour);
  ++g_tsp_solves;
  std::vector<int> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 1);
  const std::vector<double> best = suffix_table(d, nodes);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> costs(subsets, 0.0);
  for (std::size_t s = 1; s < subsets; ++s) {
    double value = kInf;
    for (std::size_t rest = s; rest != 0; rest &= rest - 1) {
      const int j = std::countr_zero(rest);
      value = std::min(value, d(0, nodes[j]) + best[(s & ~(std::size_t{1} << j)) * n + j]);
    }
    costs[s] = value;
  }
  return costs;
}

std::uint64_t tsp_solve_count() { return g_tsp_solves.load(); }

SpanningTree mst(const DistanceMatrix& d, Coalition s) {
  require_matching(d, s);
  require_symmetric(d);
  std::vector<int> nodes{0};
  for (int p : s.members()) nodes.push_back(p);

  struct Edge {
    double w;
    int u, v;
  };
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b) edges.push_back({d(nodes[a], nodes[b]), nodes[a], nodes[b]});
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    if (x.w != y.w) return x.w < y.w;
    if (x.u != y.u) return x.u < y.u;
    return x.v < y.v;
  });

  std::vector<int> root(d.nodes());
  std::iota(root.begin(), root.end(), 0);
  auto find = [&root](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };

  SpanningTree tree;
  for (const Edge& e : edges) {
    const int a = find(e.u), b = find(e.v);
    if (a == b) continue;
    root[a] = b;
    tree.edges.emplace_back(e.u, e.v);
    tree.cost += e.w;
    if (tree.edges.size() + 1 == nodes.size()) break;
  }
  return tree;
}

namespace {

std::vector<std::vector<int>> adjacency(const SpanningTree& tree, int nodes) {
  std::vector<std::vector<int>> adj(nodes);
  for (auto [u, v] : tree.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

}  // namespace

Tour double_tree_tour(const DistanceMatrix& d, Coalition s) {
  const SpanningTree tree = mst(d, s);
  const auto adj = adjacency(tree, d.nodes());
  Tour tour;
  std::vector<char> seen(d.nodes(), 0);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = 1;
    tour.order.push_back(u);
    for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
      if (!seen[*it]) stack.push_back(*it);
  }
  tour.order.push_back(0);
  tour.cost = tour_cost(d, tour.order);
  return tour;
}

Allocation bird_allocation(const DistanceMatrix& d) {
  const int n = d.players();
  const SpanningTree tree = mst(d, Coalition::grand(n));
  const auto adj = adjacency(tree, d.nodes());
  Allocation x = Allocation::Zero(n);
  std::vector<int> parent(d.nodes(), -1);
  std::vector<int> queue{0};
  parent[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : adj[u]) {
      if (parent[v] >= 0) continue;
      parent[v] = u;
      x(v - 1) = d(v, u);
      queue.push_back(v);
    }
  }
  return x;
}

}  // namespace coopstab
