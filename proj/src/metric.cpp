#include "coopstab/metric.hpp"

#include <cmath>
#include <random>

#include "coopstab/errors.hpp"

namespace coopstab {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Triangle: return "triangle";
    case ViolationKind::Negative: return "negative";
    case ViolationKind::Diagonal: return "diagonal";
    case ViolationKind::NonFinite: return "non-finite";
  }
  return "unknown";
}

namespace {

void require_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ShapeError("distance matrix must be square");
  if (m.rows() < 2) throw ShapeError("distance matrix needs the depot and at least one player");
}

}  // namespace

ValidationReport validate_metric(const Eigen::MatrixXd& d, double tol) {
  require_square(d);
  const int size = static_cast<int>(d.rows());
  ValidationReport report;
  bool finite = true;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double v = d(i, j);
      if (!std::isfinite(v)) {
        report.violations.push_back({ViolationKind::NonFinite, i, -1, j, v});
        finite = false;
        continue;
      }
      if (i == j && std::abs(v) > tol) report.violations.push_back({ViolationKind::Diagonal, i, -1, j, std::abs(v)});
      if (v < -tol) report.violations.push_back({ViolationKind::Negative, i, -1, j, -v});
      if (i < j && std::abs(v - d(j, i)) > tol) report.symmetric = false;
    }
  }
  if (finite) {
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        if (i == j) continue;
        for (int k = 0; k < size; ++k) {
          if (k == i || k == j) continue;
          const double excess = d(i, j) - (d(i, k) + d(k, j));
          if (excess > tol) report.violations.push_back({ViolationKind::Triangle, i, k, j, excess});
        }
      }
  } else {
    report.symmetric = false;
  }
  report.valid = report.violations.empty();
  return report;
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries, double tol) : entries_(std::move(entries)) {
  const ValidationReport report = validate_metric(entries_, tol);
  if (!report.valid) {
    const Violation& v = report.violations.front();
    throw DomainError(std::string("not a metric: ") + to_string(v.kind) + " violation at (" +
                      std::to_string(v.i) + "," + std::to_string(v.k) + "," + std::to_string(v.j) +
                      "), magnitude " + std::to_string(v.magnitude));
  }
  symmetric_ = report.symmetric;
}

DistanceMatrix DistanceMatrix::with_provenance(std::optional<std::uint64_t> seed, std::string generator) const {
  DistanceMatrix out = *this;
  out.seed_ = seed;
  out.generator_ = std::move(generator);
  return out;
}

DistanceMatrix gen_euclidean(int n, std::uint64_t seed, double box) {
  if (n < 1) throw DomainError("empty instance: need at least one player");
  if (!(box > 0.0)) throw DomainError("box side must be positive");
  std::mt19937_64 engine(seed);
  Eigen::MatrixX2d points(n + 1, 2);
  for (int i = 0; i <= n; ++i) {
    points(i, 0) = box * uniform01(engine);
    points(i, 1) = box * uniform01(engine);
  }
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const double dx = points(i, 0) - points(j, 0);
      const double dy = points(i, 1) - points(j, 1);
      d(i, j) = d(j, i) = std::sqrt(dx * dx + dy * dy);
    }
  return DistanceMatrix(std::move(d)).with_provenance(seed, kEuclideanGenerator);
}

DistanceMatrix gen_asymmetric_metric(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("empty instance: need at least one player");
  std::mt19937_64 engine(seed);
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      raw(i, j) = 1.0 + std::floor(uniform01(engine) * 99.0 * 65536.0) / 65536.0;
    }
  return metric_closure(raw).with_provenance(seed, kAsymmetricGenerator);
}

Eigen::MatrixXd shortest_path_closure(const Eigen::MatrixXd& entries) {
  require_square(entries);
  const Eigen::Index size = entries.rows();
  for (Eigen::Index i = 0; i < size; ++i) {
    if (entries(i, i) != 0.0) throw DomainError("closure input needs a zero diagonal");
    for (Eigen::Index j = 0; j < size; ++j)
      if (!(entries(i, j) >= 0.0)) throw DomainError("closure input has a negative or non-finite entry");
  }
  Eigen::MatrixXd d = entries;
  for (Eigen::Index k = 0; k < size; ++k)
    for (Eigen::Index i = 0; i < size; ++i)
      for (Eigen::Index j = 0; j < size; ++j) {
        const double via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
  return d;
}

DistanceMatrix metric_closure(const Eigen::MatrixXd& entries) {
  return DistanceMatrix(shortest_path_closure(entries));
}

}  // namespace coopstab
