#pragma once

// Shared fixtures and independent oracles for the test programs.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "coopstab/game.hpp"
#include "coopstab/metric.hpp"
#include "coopstab/simplex.hpp"

namespace coopstab::testing {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

// Depot at (0,0), players at (0,1), (0,2), (0,3).
inline DistanceMatrix collinear_instance() {
  Eigen::MatrixXd d(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d(i, j) = std::abs(i - j);
  return DistanceMatrix(d);
}

inline DistanceMatrix uniform_instance(int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(n + 1, n + 1);
  d.diagonal().setZero();
  return DistanceMatrix(d);
}

// Exhaustive ordered-triple scan, independent of validate_metric.
inline bool satisfies_triangle_inequality(const Eigen::MatrixXd& d, double tol = kTolMetric) {
  const auto m = d.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index j = 0; j < m; ++j)
        if (d(i, j) > d(i, k) + d(k, j) + tol) return false;
  return true;
}

// Solves a square system exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t k = b.size();
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    while (pivot < k && a[pivot][col] == 0) ++pivot;
    if (pivot == k) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t r = 0; r < k; ++r) b[r] /= a[r][r];
  return b;
}

// Minimum of a bounded LP with z >= 0 by enumerating every vertex in exact
// arithmetic. Exponential; intended for a handful of variables.
inline std::optional<Rational> vertex_minimum(const LinearProgram<double>& lp) {
  const auto k = static_cast<std::size_t>(lp.variables());
  std::vector<std::vector<Rational>> g;
  std::vector<Rational> h;
  for (Eigen::Index i = 0; i < lp.constraints(); ++i) {
    std::vector<Rational> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = Rational(lp.rows(i, static_cast<Eigen::Index>(j)));
    const Rational rhs(lp.rhs(i));
    const RowSense s = lp.sense[static_cast<std::size_t>(i)];
    if (s != RowSense::GreaterEqual) {
      g.push_back(row);
      h.push_back(rhs);
    }
    if (s != RowSense::LessEqual) {
      for (auto& v : row) v = -v;
      g.push_back(row);
      h.push_back(-rhs);
    }
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<Rational> row(k);
    row[j] = -1;
    g.push_back(row);
    h.push_back(0);
  }

  std::optional<Rational> best;
  std::vector<char> pick(g.size(), 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), 1);
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t r = 0; r < g.size(); ++r)
      if (pick[r]) {
        a.push_back(g[r]);
        b.push_back(h[r]);
      }
    const auto z = solve_exact(a, b);
    if (!z) continue;
    bool feasible = true;
    for (std::size_t r = 0; r < g.size() && feasible; ++r) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < k; ++j) lhs += g[r][j] * (*z)[j];
      feasible = lhs <= h[r];
    }
    if (!feasible) continue;
    Rational value = 0;
    for (std::size_t j = 0; j < k; ++j) value += Rational(lp.objective(static_cast<Eigen::Index>(j))) * (*z)[j];
    if (!best || value < *best) best = value;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Random coalition of the given size over n players.
inline Coalition random_coalition(int n, int size, std::mt19937_64& rng) {
  std::vector<int> players(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) players[static_cast<std::size_t>(i)] = i;
  std::shuffle(players.begin(), players.end(), rng);
  Coalition::Mask m = 0;
  for (int i = 0; i < size; ++i) m |= Coalition::Mask{1} << players[static_cast<std::size_t>(i)];
  return Coalition(n, m);
}

// Explicit table copy of any game, for checks that need an unmemoized twin.
inline CostGame table_copy(const CostGame& g) {
  return CostGame::table(g.players(), all_costs(g));
}

}  // namespace coopstab::testing
