#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace coopstab {

// Absolute tolerance for every metric comparison.
inline constexpr double kTolMetric = 1e-9;

enum class ViolationKind { Triangle, Negative, Diagonal, NonFinite };

const char* to_string(ViolationKind kind);

// For Triangle, (i, k, j) is the shortcut path: d[i][j] > d[i][k] + d[k][j].
// For entry-level violations k == -1 and (i, j) locates the entry.
struct Violation {
  ViolationKind kind;
  int i;
  int k;
  int j;
  double magnitude;
};

struct ValidationReport {
  bool valid = true;
  bool symmetric = true;
  std::vector<Violation> violations;
};

// Scans every entry and every ordered triple. Throws ShapeError when the
// input is not square or smaller than 2x2.
ValidationReport validate_metric(const Eigen::MatrixXd& entries, double tol = kTolMetric);

// Validated distances over the depot (node 0) and players 1..n. Immutable.
class DistanceMatrix {
 public:
  // Throws ShapeError on bad shape and DomainError when the matrix is not a
  // metric within `tol`.
  explicit DistanceMatrix(Eigen::MatrixXd entries, double tol = kTolMetric);

  int players() const { return static_cast<int>(entries_.rows()) - 1; }
  int nodes() const { return static_cast<int>(entries_.rows()); }
  bool symmetric() const { return symmetric_; }
  double operator()(int from, int to) const { return entries_(from, to); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  // Identifier of the generator that produced the matrix, if any.
  const std::optional<std::uint64_t>& seed() const { return seed_; }
  const std::string& generator() const { return generator_; }
  DistanceMatrix with_provenance(std::optional<std::uint64_t> seed, std::string generator) const;

 private:
  Eigen::MatrixXd entries_;
  bool symmetric_ = true;
  std::optional<std::uint64_t> seed_;
  std::string generator_;
};

inline constexpr const char* kEuclideanGenerator = "mt19937_64/euclidean-v1";
inline constexpr const char* kAsymmetricGenerator = "mt19937_64/asymmetric-grid16-v1";

// n + 1 points uniform in [0, box]^2, node 0 first; pairwise Euclidean
// distances. Bit-identical for identical arguments.
DistanceMatrix gen_euclidean(int n, std::uint64_t seed, double box = 100.0);

// Off-diagonal entries uniform in [1, 100) on a 2^-16 grid, then shortest-path
// closure. Grid values keep every path sum exact in double precision.
DistanceMatrix gen_asymmetric_metric(int n, std::uint64_t seed);

// Shortest-path distances over the complete digraph weighted by `entries`
// (Floyd-Warshall). Throws DomainError on negative entries or a nonzero
// diagonal.
Eigen::MatrixXd shortest_path_closure(const Eigen::MatrixXd& entries);
DistanceMatrix metric_closure(const Eigen::MatrixXd& entries);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
template <typename Engine>
double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace coopstab
