#include "coopstab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "coopstab/errors.hpp"

namespace coopstab {

const char* to_string(Selector s) { return s == Selector::Core ? "core" : "semicore"; }

const char* to_string(Weight w) {
  switch (w) {
    case Weight::None: return "none";
    case Weight::Strong: return "strong";
    case Weight::Weak: return "weak";
    case Weight::CostProportional: return "cost";
  }
  return "unknown";
}

Weight parse_weight(const std::string& name) {
  if (name == "strong") return Weight::Strong;
  if (name == "weak") return Weight::Weak;
  if (name == "cost") return Weight::CostProportional;
  throw DomainError("unknown weight '" + name + "' (expected strong, weak or cost)");
}

const char* to_string(StabilityStatus s) {
  return s == StabilityStatus::AlreadyStable ? "already stable" : "stabilized";
}

const char* to_string(Concept c) {
  switch (c) {
    case Concept::Core: return "core";
    case Concept::CostOfStability: return "cos";
    case Concept::EpsCore: return "eps-core";
    case Concept::Alpha: return "alpha";
    case Concept::Semicore: return "semicore";
    case Concept::CostOfSemicoreStability: return "coss";
    case Concept::EpsSemicore: return "eps-semicore";
  }
  return "unknown";
}

namespace {

void check_selector(const CostGame& g, Selector selector) {
  const int n = g.players();
  if (selector == Selector::Core) {
    if (n > kCapCostTable) throw CapacityError("core models limited to 16 players", kCapCostTable);
  } else if (n < 2) {
    throw DomainError("semicore models need at least two players");
  }
}

// Costs of the family rows, in family order.
std::vector<double> family_costs(const CostGame& g, Selector selector, const std::vector<Coalition>& family) {
  std::vector<double> out;
  out.reserve(family.size());
  if (selector == Selector::Core) {
    const std::vector<double> table = all_costs(g);
    for (Coalition s : family) out.push_back(table[s.mask()]);
  } else {
    for (Coalition s : family) out.push_back(g.cost(s));
  }
  return out;
}

void fill_membership(LinearProgram<double>::Matrix& rows, Eigen::Index r, Coalition s) {
  for (Coalition::Mask m = s.mask(); m != 0; m &= m - 1) rows(r, std::countr_zero(m)) = 1.0;
}

double slack_weight(Weight w, Coalition s, double cost) {
  switch (w) {
    case Weight::None: return 0.0;
    case Weight::Strong: return 1.0;
    case Weight::Weak: return static_cast<double>(s.size());
    case Weight::CostProportional: return cost;
  }
  return 0.0;
}

LinearProgram<double> eps_model(const CostGame& g, Selector selector, Weight weight, bool subsidy) {
  check_selector(g, selector);
  const int n = g.players();
  const std::vector<Coalition> family = family_coalitions(n, selector);
  const std::vector<double> costs = family_costs(g, selector, family);
  const auto rows = static_cast<Eigen::Index>(family.size()) + 1;

  LinearProgram<double> lp;
  lp.objective = Eigen::VectorXd::Zero(n + 1);
  lp.objective(n) = 1.0;
  lp.rows = LinearProgram<double>::Matrix::Zero(rows, n + 1);
  lp.rhs.resize(rows);
  lp.sense.assign(static_cast<std::size_t>(rows), RowSense::LessEqual);

  lp.rows.row(0).head(n).setOnes();
  if (subsidy) lp.rows(0, n) = 1.0;
  lp.rhs(0) = g.grand_cost();
  lp.sense[0] = RowSense::Equal;
  for (std::size_t f = 0; f < family.size(); ++f) {
    const auto r = static_cast<Eigen::Index>(f) + 1;
    fill_membership(lp.rows, r, family[f]);
    lp.rows(r, n) = -slack_weight(weight, family[f], costs[f]);
    lp.rhs(r) = costs[f];
  }
  return lp;
}

LpSolution<double> solve(const LinearProgram<double>& lp, const char* what) {
  LpSolution<double> sol = lp_minimize(lp);
  if (sol.status != LpStatus::Optimal)
    throw InfeasibleError(std::string(what) + " LP ended " + to_string(sol.status) +
                          " (the model is always feasible and bounded)");
  return sol;
}

StabilityResult eps_result(const CostGame& g, Concept concept_kind, ConstraintFamily family, bool subsidy,
                           double tol) {
  const LinearProgram<double> lp = eps_model(g, family.selector, family.weight, subsidy);
  const LpSolution<double> sol = solve(lp, to_string(concept_kind));
  const int n = g.players();
  StabilityResult r;
  r.concept_kind = concept_kind;
  r.family = family;
  r.witness = sol.point.head(n);
  r.value = std::max(0.0, sol.point(n));
  if (r.value <= tol) {
    // Spread the residual subsidy so the witness is efficient at value 0.
    if (subsidy) r.witness.array() += r.value / n;
    r.value = 0.0;
    r.status = StabilityStatus::AlreadyStable;
  } else {
    r.status = StabilityStatus::Stabilized;
  }
  return r;
}

}  // namespace

std::vector<Coalition> family_coalitions(int n, Selector selector) {
  std::vector<Coalition> out;
  const Coalition::Mask full = Coalition::full_mask(n);
  if (selector == Selector::Core) {
    if (n > kCapCostTable) throw CapacityError("core family limited to 16 players", kCapCostTable);
    for (Coalition::Mask s = 1; s < full; ++s) out.emplace_back(n, s);
    return out;
  }
  std::vector<Coalition::Mask> masks;
  for (int i = 0; i < n; ++i) {
    masks.push_back(Coalition::Mask{1} << i);
    masks.push_back(full & ~(Coalition::Mask{1} << i));
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  for (auto m : masks)
    if (m != 0 && m != full) out.emplace_back(n, m);
  return out;
}

LinearProgram<double> subsidy_program(const CostGame& g, Selector selector) {
  return eps_model(g, selector, Weight::None, true);
}

LinearProgram<double> epsilon_program(const CostGame& g, ConstraintFamily family) {
  if (family.weight == Weight::None) throw DomainError("epsilon models need a slack weight");
  return eps_model(g, family.selector, family.weight, false);
}

LinearProgram<double> budget_program(const CostGame& g) {
  const int n = g.players();
  if (n > kCapCostTable) throw CapacityError("budget model limited to 16 players", kCapCostTable);
  const std::vector<double> table = all_costs(g);
  const auto rows = static_cast<Eigen::Index>(table.size()) - 1;
  LinearProgram<double> lp;
  lp.objective = -Eigen::VectorXd::Ones(n);
  lp.rows = LinearProgram<double>::Matrix::Zero(rows, n);
  lp.rhs.resize(rows);
  lp.sense.assign(static_cast<std::size_t>(rows), RowSense::LessEqual);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto mask = static_cast<Coalition::Mask>(r + 1);
    fill_membership(lp.rows, r, Coalition(n, mask));
    lp.rhs(r) = table[mask];
  }
  return lp;
}

StabilityResult cost_of_stability(const CostGame& g, double tol) {
  return eps_result(g, Concept::CostOfStability, {Selector::Core, Weight::None}, true, tol);
}

std::optional<Allocation> core_element(const CostGame& g, double tol) {
  StabilityResult r = cost_of_stability(g, tol);
  if (r.status != StabilityStatus::AlreadyStable) return std::nullopt;
  return std::move(r.witness);
}

StabilityResult optimal_eps_core(const CostGame& g, Weight weight, double tol) {
  if (weight == Weight::None) throw DomainError("eps-core needs a slack weight");
  return eps_result(g, Concept::EpsCore, {Selector::Core, weight}, false, tol);
}

StabilityResult optimal_alpha_core(const CostGame& g, double tol) {
  const double grand = g.grand_cost();
  if (!(grand > 0.0)) throw DegenerateGameError("alpha-core needs c(N) > 0");
  const LpSolution<double> sol = solve(budget_program(g), "alpha");
  const double budget = -sol.value;
  if (!(budget > tol)) throw DegenerateGameError("no positive budget is stable; alpha is unbounded");

  const StabilityResult cos = cost_of_stability(g, tol);
  const double alpha = grand / budget;
  const double alpha_from_cos = grand / (grand - cos.value);
  if (std::abs(alpha - alpha_from_cos) > tol * std::max(1.0, alpha))
    throw Error("alpha cross-check failed: budget LP gives " + std::to_string(alpha) + ", subsidy LP gives " +
                std::to_string(alpha_from_cos));

  StabilityResult r;
  r.concept_kind = Concept::Alpha;
  r.family = {Selector::Core, Weight::None};
  r.witness = sol.point;
  if (alpha - 1.0 <= tol) {
    r.value = 1.0;
    r.status = StabilityStatus::AlreadyStable;
  } else {
    r.value = alpha;
    r.status = StabilityStatus::Stabilized;
  }
  r.alpha = r.value;
  return r;
}

std::optional<Allocation> semicore_element(const CostGame& g, double tol) {
  StabilityResult r = cost_of_semicore_stability_lp(g, tol);
  if (r.status != StabilityStatus::AlreadyStable) return std::nullopt;
  return std::move(r.witness);
}

StabilityResult cost_of_semicore_stability_lp(const CostGame& g, double tol) {
  return eps_result(g, Concept::CostOfSemicoreStability, {Selector::Semicore, Weight::None}, true, tol);
}

StabilityResult optimal_eps_semicore_lp(const CostGame& g, Weight weight, double tol) {
  if (weight == Weight::None) throw DomainError("eps-semicore needs a slack weight");
  return eps_result(g, Concept::EpsSemicore, {Selector::Semicore, weight}, false, tol);
}

double witness_violation(const CostGame& g, const StabilityResult& r) {
  const int n = g.players();
  const Allocation& x = r.witness;
  if (x.size() != n) return std::numeric_limits<double>::infinity();
  double worst = std::max(0.0, -x.minCoeff());
  const double grand = g.grand_cost();
  const double paid = x.sum();

  if (r.concept_kind == Concept::Alpha) {
    worst = std::max(worst, grand / r.value - paid);
    const std::vector<double> table = all_costs(g);
    for (std::size_t s = 1; s < table.size(); ++s)
      worst = std::max(worst, coalition_sum(x, Coalition(n, static_cast<Coalition::Mask>(s))) - table[s]);
    return worst;
  }

  const bool subsidy = r.family.weight == Weight::None;
  worst = std::max(worst, std::abs(paid - (subsidy ? grand - r.value : grand)));
  const std::vector<Coalition> family = family_coalitions(n, r.family.selector);
  const std::vector<double> costs = family_costs(g, r.family.selector, family);
  for (std::size_t f = 0; f < family.size(); ++f) {
    const double slack = subsidy ? 0.0 : slack_weight(r.family.weight, family[f], costs[f]) * r.value;
    worst = std::max(worst, coalition_sum(x, family[f]) - costs[f] - slack);
  }
  return worst;
}

double semicore_violation(const CostGame& g, const Allocation& x, double eps) {
  const int n = g.players();
  if (n < 2) throw DomainError("semicore needs at least two players");
  const Coalition grand = g.grand();
  double worst = std::max(0.0, -x.minCoeff());
  worst = std::max(worst, std::abs(x.sum() - (g.cost(grand) - eps)));
  for (int i = 1; i <= n; ++i) {
    worst = std::max(worst, x(i - 1) - g.cost(Coalition::singleton(n, i)));
    worst = std::max(worst, coalition_sum(x, grand.without(i)) - g.cost(grand.without(i)));
  }
  return worst;
}

}  // namespace coopstab
