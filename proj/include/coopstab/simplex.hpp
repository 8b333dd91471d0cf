#pragma once

// Dense primal simplex for small LPs with many rows.
//
//   minimize    objective . z
//   subject to  rows(i) . z  {<=, =, >=}  rhs(i)
//               z >= 0
//
// The solver works on the inequality form G z <= h (equalities become two
// opposite rows, the bounds z >= 0 become rows -z_j <= 0) and walks between
// vertices, each described by the set of k tight rows that pins it. One
// iteration costs two passes over the row matrix plus a k x k inverse, which
// suits the stability LPs: at most 18 columns against up to 2^16 rows.
//
// Templated on the scalar so the same code runs in double precision and in
// exact rational arithmetic (where every tolerance is zero).

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace coopstab {

enum class RowSense { LessEqual, Equal, GreaterEqual };

template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Vector objective;
  Matrix rows;
  Vector rhs;
  std::vector<RowSense> sense;

  Eigen::Index variables() const { return objective.size(); }
  Eigen::Index constraints() const { return rows.rows(); }

  template <typename NewScalar>
  LinearProgram<NewScalar> cast() const {
    LinearProgram<NewScalar> out;
    out.objective = objective.template cast<NewScalar>();
    out.rows = rows.template cast<NewScalar>();
    out.rhs = rhs.template cast<NewScalar>();
    out.sense = sense;
    return out;
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Scalar value{0};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> point;
  int iterations = 0;
};

template <typename Scalar>
struct SimplexOptions {
  Scalar pivot_tol;
  Scalar optimality_tol;
  Scalar feasibility_tol;
  int max_iterations = 200000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 40;

  static SimplexOptions defaults() {
    if constexpr (std::numeric_limits<Scalar>::is_exact) {
      return {Scalar(0), Scalar(0), Scalar(0)};
    } else {
      return {Scalar(1e-9), Scalar(1e-10), Scalar(1e-9)};
    }
  }
};

namespace detail {

template <typename Scalar>
class ActiveSetSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Square = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  // Rows 0..m-1 are `g`; rows m..m+k-1 are the bounds -z_j <= 0.
  ActiveSetSimplex(const Matrix& g, const Vector& h, const SimplexOptions<Scalar>& opt)
      : g_(g), h_(h), opt_(opt), m_(g.rows()), k_(g.cols()) {}

  Eigen::Index total_rows() const { return m_ + k_; }

  LpStatus run(const Vector& objective, std::vector<Eigen::Index>& active, int& iterations) {
    std::vector<char> is_active(static_cast<std::size_t>(total_rows()), 0);
    for (auto r : active) is_active[static_cast<std::size_t>(r)] = 1;
    int degenerate_streak = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::IterationLimit;
      factor(active);
      const Vector lambda = -inverse_.transpose().lazyProduct(objective);

      const bool bland = degenerate_streak >= opt_.bland_after;
      Eigen::Index leave = -1;
      for (Eigen::Index p = 0; p < k_; ++p) {
        if (!(lambda(p) < -opt_.optimality_tol)) continue;
        if (leave < 0) {
          leave = p;
        } else if (bland ? active[p] < active[leave] : lambda(p) < lambda(leave)) {
          leave = p;
        }
      }
      if (leave < 0) return LpStatus::Optimal;

      const Vector direction = -inverse_.col(leave);
      const Vector g_dir = g_.lazyProduct(direction);
      const Vector slack = h_ - g_.lazyProduct(point_);

      Eigen::Index enter = -1;
      Scalar best_ratio(0), best_pivot(0);
      auto consider = [&](Eigen::Index row, const Scalar& rate, const Scalar& room) {
        if (is_active[static_cast<std::size_t>(row)] || !(rate > opt_.pivot_tol)) return;
        const Scalar ratio = std::max(Scalar(0), room) / rate;
        bool take = enter < 0;
        if (!take) {
          if (ratio < best_ratio - tie_tol(best_ratio)) {
            take = true;
          } else if (!(ratio > best_ratio + tie_tol(best_ratio))) {
            take = bland ? row < enter : rate > best_pivot;
          }
        }
        if (take) {
          enter = row;
          best_ratio = ratio;
          best_pivot = rate;
        }
      };
      for (Eigen::Index i = 0; i < m_; ++i) consider(i, g_dir(i), slack(i));
      for (Eigen::Index j = 0; j < k_; ++j) consider(m_ + j, Scalar(-direction(j)), point_(j));
      if (enter < 0) return LpStatus::Unbounded;

      degenerate_streak = best_ratio > opt_.pivot_tol ? 0 : degenerate_streak + 1;
      is_active[static_cast<std::size_t>(active[leave])] = 0;
      is_active[static_cast<std::size_t>(enter)] = 1;
      active[leave] = enter;
      ++iterations;
    }
  }

  // Rebuilds the inverse of the active rows and the vertex they pin.
  void factor(const std::vector<Eigen::Index>& active) {
    Square basis(k_, k_);
    Vector rhs(k_);
    for (Eigen::Index p = 0; p < k_; ++p) {
      const Eigen::Index r = active[p];
      if (r < m_) {
        basis.row(p) = g_.row(r);
        rhs(p) = h_(r);
      } else {
        basis.row(p).setZero();
        basis(p, r - m_) = Scalar(-1);
        rhs(p) = Scalar(0);
      }
    }
    if constexpr (std::numeric_limits<Scalar>::is_exact) {
      inverse_ = gauss_jordan_inverse(basis);
    } else {
      inverse_ = basis.partialPivLu().inverse();
    }
    point_ = inverse_.lazyProduct(rhs);
  }

  const Vector& point() const { return point_; }
  const Square& inverse() const { return inverse_; }

 private:
  // Eigen's LU expressions do not compile for every exact scalar type, so
  // exact arithmetic takes this plain elimination instead.
  static Square gauss_jordan_inverse(Square a) {
    const Eigen::Index k = a.rows();
    Square inv = Square::Identity(k, k);
    for (Eigen::Index col = 0; col < k; ++col) {
      Eigen::Index pivot = col;
      while (pivot < k && a(pivot, col) == Scalar(0)) ++pivot;
      if (pivot == k) return inv;  // singular; the simplex never pins such a vertex
      a.row(col).swap(a.row(pivot));
      inv.row(col).swap(inv.row(pivot));
      const Scalar scale = a(col, col);
      a.row(col) /= scale;
      inv.row(col) /= scale;
      for (Eigen::Index r = 0; r < k; ++r) {
        if (r == col || a(r, col) == Scalar(0)) continue;
        const Scalar f = a(r, col);
        a.row(r) -= f * a.row(col);
        inv.row(r) -= f * inv.row(col);
      }
    }
    return inv;
  }

  Scalar tie_tol(const Scalar& scale) const {
    using std::abs;
    return opt_.pivot_tol * (Scalar(1) + abs(scale));
  }

  const Matrix& g_;
  const Vector& h_;
  SimplexOptions<Scalar> opt_;
  Eigen::Index m_, k_;
  Square inverse_;
  Vector point_;
};

}  // namespace detail

template <typename Scalar>
LpSolution<Scalar> lp_minimize(const LinearProgram<Scalar>& lp,
                               const SimplexOptions<Scalar>& opt = SimplexOptions<Scalar>::defaults()) {
  using Vector = typename LinearProgram<Scalar>::Vector;
  using Matrix = typename LinearProgram<Scalar>::Matrix;
  using std::abs;

  const Eigen::Index k = lp.variables();
  Eigen::Index m = 0;
  for (RowSense s : lp.sense) m += s == RowSense::Equal ? 2 : 1;

  // Inequality form G z <= h.
  Matrix g(m, k);
  Vector h(m);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < lp.constraints(); ++i) {
    const RowSense s = lp.sense[static_cast<std::size_t>(i)];
    if (s != RowSense::GreaterEqual) {
      g.row(r) = lp.rows.row(i);
      h(r++) = lp.rhs(i);
    }
    if (s != RowSense::LessEqual) {
      g.row(r) = -lp.rows.row(i);
      h(r++) = -lp.rhs(i);
    }
  }

  LpSolution<Scalar> out;
  std::vector<Eigen::Index> active;

  Scalar worst(0);
  Eigen::Index worst_row = -1;
  for (Eigen::Index i = 0; i < m; ++i)
    if (-h(i) > worst) {
      worst = -h(i);
      worst_row = i;
    }

  if (worst_row >= 0) {
    // Phase one: minimize t subject to G z - t <= h, z, t >= 0, starting at
    // z = 0, t = max violation.
    Matrix g1(m, k + 1);
    g1.leftCols(k) = g;
    g1.col(k).setConstant(Scalar(-1));
    Vector c1 = Vector::Zero(k + 1);
    c1(k) = Scalar(1);
    detail::ActiveSetSimplex<Scalar> phase1(g1, h, opt);
    for (Eigen::Index j = 0; j < k; ++j) active.push_back(m + j);
    active.push_back(worst_row);
    const LpStatus st = phase1.run(c1, active, out.iterations);
    if (st == LpStatus::IterationLimit) {
      out.status = st;
      return out;
    }
    phase1.factor(active);
    Scalar scale(1);
    for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, Scalar(abs(h(i))));
    if (phase1.point()(k) > opt.feasibility_tol * scale) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    const Eigen::Index t_bound = m + k;
    auto it = std::find(active.begin(), active.end(), t_bound);
    if (it == active.end()) {
      // t sits at zero without its bound being pinned: swap the bound in for
      // the active row carrying the largest share of it.
      const auto& inv = phase1.inverse();
      Eigen::Index swap = 0;
      for (Eigen::Index p = 1; p <= k; ++p)
        if (abs(inv(k, p)) > abs(inv(k, swap))) swap = p;
      active[static_cast<std::size_t>(swap)] = t_bound;
      it = active.begin() + swap;
    }
    active.erase(it);
  } else {
    for (Eigen::Index j = 0; j < k; ++j) active.push_back(m + j);
  }

  detail::ActiveSetSimplex<Scalar> phase2(g, h, opt);
  out.status = phase2.run(lp.objective, active, out.iterations);
  phase2.factor(active);
  out.point = phase2.point();
  for (Eigen::Index j = 0; j < k; ++j)
    if (out.point(j) < Scalar(0)) out.point(j) = Scalar(0);
  out.value = lp.objective.dot(out.point);
  return out;
}

}  // namespace coopstab
