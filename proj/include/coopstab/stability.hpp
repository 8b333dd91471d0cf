#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coopstab/allocation.hpp"
#include "coopstab/game.hpp"
#include "coopstab/simplex.hpp"

namespace coopstab {

// Which coalitions carry a stability row.
enum class Selector {
  Core,      // every proper nonempty subset
  Semicore,  // the singletons and the (n-1)-subsets
};

// Slack weight f(S) in x(S) <= c(S) + f(S) eps.
enum class Weight {
  None,              // no slack (subsidy and budget models)
  Strong,            // f(S) = 1
  Weak,              // f(S) = |S|
  CostProportional,  // f(S) = c(S)
};

struct ConstraintFamily {
  Selector selector = Selector::Core;
  Weight weight = Weight::None;
};

const char* to_string(Selector s);
const char* to_string(Weight w);
// Accepts "strong", "weak", "cost"; throws DomainError otherwise.
Weight parse_weight(const std::string& name);

enum class StabilityStatus { AlreadyStable, Stabilized };
const char* to_string(StabilityStatus s);

enum class Concept { Core, CostOfStability, EpsCore, Alpha, Semicore, CostOfSemicoreStability, EpsSemicore };
const char* to_string(Concept c);

struct StabilityResult {
  Concept concept_kind = Concept::CostOfStability;
  ConstraintFamily family;
  // Optimal eps (subsidy or slack); for the alpha-core this is alpha.
  double value = 0.0;
  std::optional<double> alpha;
  Allocation witness;
  StabilityStatus status = StabilityStatus::AlreadyStable;
};

// Stability rows of the family, ascending by coalition mask.
std::vector<Coalition> family_coalitions(int n, Selector selector);

// LP models over z = (x_1..x_n, eps), all nonnegative.
//
// subsidy:  min eps  s.t. x(N) + eps = c(N),  x(S) <= c(S)
// epsilon:  min eps  s.t. x(N) = c(N),        x(S) - f(S) eps <= c(S)
// budget:   max x(N) s.t. x(S) <= c(S) for every S including N (z = x only)
LinearProgram<double> subsidy_program(const CostGame& g, Selector selector);
LinearProgram<double> epsilon_program(const CostGame& g, ConstraintFamily family);
LinearProgram<double> budget_program(const CostGame& g);

// Minimal subsidy for a nonempty core. value == 0 iff the core is nonempty.
StabilityResult cost_of_stability(const CostGame& g, double tol = kTolLp);

// A core allocation, or nullopt when the core is empty.
std::optional<Allocation> core_element(const CostGame& g, double tol = kTolLp);

// Smallest eps for which the eps-core with the given slack weight is nonempty.
StabilityResult optimal_eps_core(const CostGame& g, Weight weight, double tol = kTolLp);

// Smallest alpha >= 1 with a nonempty alpha-core, from the budget LP;
// cross-checked against c(N) / (c(N) - CoS). Throws DegenerateGameError when
// c(N) = 0 or no positive budget is stable.
StabilityResult optimal_alpha_core(const CostGame& g, double tol = kTolLp);

// Semicore counterparts; only the n + 1 costs c(N), c(N \ {i}), c({i}) are
// queried. All need n >= 2.
std::optional<Allocation> semicore_element(const CostGame& g, double tol = kTolLp);
StabilityResult cost_of_semicore_stability_lp(const CostGame& g, double tol = kTolLp);
StabilityResult optimal_eps_semicore_lp(const CostGame& g, Weight weight, double tol = kTolLp);

// Largest violation of the result's own constraint family when the witness
// is substituted at the reported value (0 when every row holds exactly).
double witness_violation(const CostGame& g, const StabilityResult& r);
inline bool verify_witness(const CostGame& g, const StabilityResult& r, double tol = kTolLp) {
  return witness_violation(g, r) <= tol;
}

// Largest violation of the semicore rows by x at subsidy eps:
// x(N) = c(N) - eps, x_i <= c({i}), x(N \ {i}) <= c(N \ {i}), x >= 0.
double semicore_violation(const CostGame& g, const Allocation& x, double eps);

}  // namespace coopstab
