#pragma once

#include <Eigen/Core>

#include "coopstab/coalition.hpp"

namespace coopstab {

// Payment vector; entry (i - 1) is what player i pays.
template <typename Scalar>
using AllocationT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Allocation = AllocationT<double>;

// x(S): total paid by the members of S.
template <typename Derived>
typename Derived::Scalar coalition_sum(const Eigen::MatrixBase<Derived>& x, Coalition s) {
  typename Derived::Scalar total(0);
  for (Coalition::Mask m = s.mask(); m != 0; m &= m - 1) total += x(std::countr_zero(m));
  return total;
}

}  // namespace coopstab
