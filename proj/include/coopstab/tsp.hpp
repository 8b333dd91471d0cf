#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coopstab/allocation.hpp"
#include "coopstab/coalition.hpp"
#include "coopstab/metric.hpp"

namespace coopstab {

inline constexpr int kCapExactTour = 16;
inline constexpr int kCapBruteforceTour = 9;

// Closed walk 0 -> members... -> 0.
struct Tour {
  std::vector<int> order;
  double cost = 0.0;
};

// Edges are stored with first < second, in the order they were accepted.
struct SpanningTree {
  std::vector<std::pair<int, int>> edges;
  double cost = 0.0;
};

// Cost of a closed walk, accumulated from the last arc back to the first:
// d[o0][o1] + (d[o1][o2] + (... + d[ok][o(k+1)])). Every tour oracle prices
// tours with this one convention so equal tours compare bit-identical.
double tour_cost(const DistanceMatrix& d, std::span<const int> order);

// Minimum-cost tour over s + depot by dynamic programming over subsets
// (directed arcs). Among optimal tours the lexicographically smallest order
// is returned. Throws CapacityError above kCapExactTour members.
Tour tsp_exact(const DistanceMatrix& d, Coalition s);

// Exhaustive permutation search with the same tie-breaking rule.
Tour tsp_bruteforce(const DistanceMatrix& d, Coalition s);

// Optimal tour cost of every coalition from one subset sweep, indexed by
// coalition mask (entry 0 is 0). Values are bit-identical to tsp_exact.
std::vector<double> all_tour_costs(const DistanceMatrix& d);

// Number of exact tour solves (tsp_exact, tsp_bruteforce, all_tour_costs)
// performed by this process.
std::uint64_t tsp_solve_count();

// Kruskal on s + depot; ties go to the lexicographically smaller edge.
// Throws DomainError on asymmetric matrices.
SpanningTree mst(const DistanceMatrix& d, Coalition s);

// Preorder walk of the MST from the depot (children in ascending order),
// i.e. the doubled-tree Eulerian tour shortcut at first appearance.
Tour double_tree_tour(const DistanceMatrix& d, Coalition s);

// Core allocation of the spanning-tree game: every player pays the edge to
// its parent in the depot-rooted MST of the grand coalition.
Allocation bird_allocation(const DistanceMatrix& d);

}  // namespace coopstab
