#include "coopstab/semicore_analysis.hpp"

#include "coopstab/errors.hpp"
#include "coopstab/stability.hpp"
#include "coopstab/tsp.hpp"

namespace coopstab {

namespace {

void require_two_players(const CostGame& g) {
  if (g.players() < 2) throw DomainError("semicore quantities need at least two players");
}

// sum_j c(N \ {j})
double complement_sum(const CostGame& g) {
  const Coalition grand = g.grand();
  double total = 0.0;
  for (int j = 1; j <= g.players(); ++j) total += g.cost(grand.without(j));
  return total;
}

void require_closed_form_hypotheses(const CostGame& g, SubadditivityCheck check, double tol) {
  require_two_players(g);
  if (check == SubadditivityCheck::Verify && g.players() <= kCapSubadditivity && !is_subadditive(g, tol).subadditive)
    throw PreconditionError("game is not subadditive");
  if (!semicore_empty_criterion(g, tol))
    throw PreconditionError("semicore is nonempty; the LP gives the (zero) optimum");
}

}  // namespace

bool semicore_empty_criterion(const CostGame& g, double tol) {
  require_two_players(g);
  return marginal_costs(g).sum() > g.grand_cost() + tol;
}

double coss_closed_form(const CostGame& g, SubadditivityCheck check, double tol) {
  require_closed_form_hypotheses(g, check, tol);
  const double n = g.players();
  return g.grand_cost() - complement_sum(g) / (n - 1.0);
}

double soes_closed_form(const CostGame& g, SubadditivityCheck check, double tol) {
  require_closed_form_hypotheses(g, check, tol);
  const double n = g.players();
  return (n - 1.0) / n * g.grand_cost() - complement_sum(g) / n;
}

Allocation coss_closed_form_point(const CostGame& g, SubadditivityCheck check, double tol) {
  require_closed_form_hypotheses(g, check, tol);
  const Coalition grand = g.grand();
  const double share = complement_sum(g) / (g.players() - 1.0);
  Allocation x(g.players());
  for (int i = 1; i <= g.players(); ++i) x(i - 1) = share - g.cost(grand.without(i));
  return x;
}

Allocation soes_closed_form_point(const CostGame& g, SubadditivityCheck check, double tol) {
  require_closed_form_hypotheses(g, check, tol);
  const Coalition grand = g.grand();
  const double share = (g.grand_cost() + complement_sum(g)) / g.players();
  Allocation x(g.players());
  for (int i = 1; i <= g.players(); ++i) x(i - 1) = share - g.cost(grand.without(i));
  return x;
}

MstBound bound_cos_mst(const DistanceMatrix& d, double tol) {
  if (!d.symmetric()) throw DomainError("spanning-tree bound needs a symmetric distance matrix");
  const int n = d.players();
  const std::vector<double> tours = all_tour_costs(d);

  MstBound b;
  b.grand_cost = tours.back();
  b.mst_grand_cost = mst(d, Coalition::grand(n)).cost;
  b.value = b.grand_cost - b.mst_grand_cost;
  b.witness = bird_allocation(d);
  for (std::size_t s = 1; s < tours.size(); ++s)
    if (coalition_sum(b.witness, Coalition(n, static_cast<Coalition::Mask>(s))) > tours[s] + tol)
      throw Error("spanning-tree witness exceeds a coalition tour cost");
  return b;
}

MaxMarginalBound bound_coss_max_marginal(const CostGame& g, double tol) {
  require_two_players(g);
  const int n = g.players();
  const Eigen::VectorXd marginal = marginal_costs(g);
  const Eigen::VectorXd ir = individual_rationalities(g);
  const double ir_total = ir.sum();
  if (!(ir_total > 0.0)) throw DegenerateGameError("singleton costs sum to zero");

  MaxMarginalBound b;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (marginal(i) > marginal(best)) best = i;
  b.max_marginal_player = static_cast<int>(best) + 1;
  b.value = marginal(best);
  const double paid = g.cost(g.grand().without(b.max_marginal_player));
  b.witness = ir * (paid / ir_total);
  if (semicore_violation(g, b.witness, b.value) > tol)
    throw PreconditionError("proportional witness violates the semicore rows; game is not subadditive");
  return b;
}

AvgIrBound bound_coss_avg_ir(const DistanceMatrix& d) {
  const int n = d.players();
  if (n < 2) throw DomainError("average-IR bound needs at least two players");
  Eigen::VectorXd ir(n);
  for (int j = 1; j <= n; ++j) ir(j - 1) = d(0, j) + d(j, 0);
  Eigen::Index top = 0;
  for (Eigen::Index j = 1; j < n; ++j)
    if (ir(j) > ir(top)) top = j;
  AvgIrBound b;
  b.max_ir_player = static_cast<int>(top) + 1;
  double rest = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    if (j != top) rest += ir(j);
  b.value = rest / (n - 1);
  return b;
}

BoundsReport bounds_report(const CostGame& g, double tol) {
  require_two_players(g);
  BoundsReport r;
  const DistanceMatrix* d = g.kind() == GameKind::Tsg ? g.distances() : nullptr;
  if (d && d->symmetric()) r.cos_mst_bound = bound_cos_mst(*d, tol);
  r.coss_max_marginal_bound = bound_coss_max_marginal(g, tol);
  if (d) r.coss_avg_ir_bound = bound_coss_avg_ir(*d);
  r.exact_coss = cost_of_semicore_stability_lp(g, tol).value;
  r.exact_soes = optimal_eps_semicore_lp(g, Weight::Strong, tol).value;
  r.semicore_empty = semicore_empty_criterion(g, tol);
  return r;
}

}  // namespace coopstab
