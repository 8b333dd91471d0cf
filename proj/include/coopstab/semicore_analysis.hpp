#pragma once

#include <optional>

#include "coopstab/allocation.hpp"
#include "coopstab/game.hpp"
#include "coopstab/metric.hpp"

namespace coopstab {

// Whether the closed forms verify subadditivity (exhaustively, n <= 12) or
// take it from the caller.
enum class SubadditivityCheck { Verify, Assume };

// For a subadditive game the semicore is empty exactly when the marginal
// costs sum to more than c(N). Returns sum_j (c(N) - c(N \ {j})) > c(N) + tol.
bool semicore_empty_criterion(const CostGame& g, double tol = kTolLp);

// CoSS = c(N) - (1/(n-1)) sum_j c(N \ {j}) for subadditive games with an
// empty semicore. Throws PreconditionError when the semicore is nonempty
// (the subsidy is then 0, see cost_of_semicore_stability_lp) or when the
// verified game is not subadditive.
double coss_closed_form(const CostGame& g, SubadditivityCheck check = SubadditivityCheck::Verify,
                        double tol = kTolLp);

// sOeS = ((n-1)/n) c(N) - (1/n) sum_i c(N \ {i}), same hypotheses.
double soes_closed_form(const CostGame& g, SubadditivityCheck check = SubadditivityCheck::Verify,
                        double tol = kTolLp);

// The perturbed games behind the two closed forms have marginal costs summing
// to their grand cost, so their semicore holds at most one allocation: the
// marginal vector returned here. Payments must be nonnegative, hence each
// closed form equals its LP exactly when this point has no negative entry;
// otherwise the LP optimum lies strictly above the formula.
Allocation coss_closed_form_point(const CostGame& g, SubadditivityCheck check = SubadditivityCheck::Verify,
                                  double tol = kTolLp);
Allocation soes_closed_form_point(const CostGame& g, SubadditivityCheck check = SubadditivityCheck::Verify,
                                  double tol = kTolLp);

// Spanning-tree bound on the cost of stability of a symmetric TSG:
// eps = c(N) - c_st(N) <= c(N) / 2, certified by the Bird allocation against
// every coalition's tour cost.
struct MstBound {
  double value = 0.0;
  double grand_cost = 0.0;
  double mst_grand_cost = 0.0;
  Allocation witness;
};
MstBound bound_cos_mst(const DistanceMatrix& d, double tol = kTolLp);

// CoSS <= max_j (c(N) - c(N \ {j})). The witness pays c(N \ {M}) in
// proportion to the singleton costs, M being the max-marginal player
// (smallest index on ties).
struct MaxMarginalBound {
  double value = 0.0;
  int max_marginal_player = 0;
  Allocation witness;
};
MaxMarginalBound bound_coss_max_marginal(const CostGame& g, double tol = kTolLp);

// CoSS of a TSG <= mean of the n - 1 smallest individual rationalities
// d[0][j] + d[j][0]. Reads the matrix only; no tour is solved.
struct AvgIrBound {
  double value = 0.0;
  int max_ir_player = 0;
};
AvgIrBound bound_coss_avg_ir(const DistanceMatrix& d);

struct BoundsReport {
  std::optional<MstBound> cos_mst_bound;  // symmetric TSGs only
  MaxMarginalBound coss_max_marginal_bound;
  std::optional<AvgIrBound> coss_avg_ir_bound;  // TSGs only
  double exact_coss = 0.0;
  double exact_soes = 0.0;
  bool semicore_empty = false;
};

// Needs n >= 2; the MST bound additionally needs the full tour table.
BoundsReport bounds_report(const CostGame& g, double tol = kTolLp);

}  // namespace coopstab
