#include "coopstab/cli.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "coopstab/errors.hpp"
#include "coopstab/instances.hpp"
#include "coopstab/io.hpp"
#include "coopstab/semicore_analysis.hpp"
#include "coopstab/stability.hpp"
#include "coopstab/tsp.hpp"

namespace coopstab {

namespace {

// Usage errors detected after CLI11 parsing (unknown concept, bad config).
class UsageError : public Error {
 public:
  using Error::Error;
};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string digest(const std::vector<double>& table) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t s = 1; s < table.size(); ++s) {
    const auto bits = std::bit_cast<std::uint64_t>(table[s]);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "euclidean";
  int n = 0;
  std::uint64_t seed = 0;
  double box = 100.0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  DistanceMatrix d = [&] {
    if (a.kind == "euclidean") return gen_euclidean(a.n, a.seed, a.box);
    if (a.kind == "asymmetric") return gen_asymmetric_metric(a.n, a.seed);
    throw UsageError("unknown kind '" + a.kind + "' (expected euclidean or asymmetric)");
  }();
  const ValidationReport report = validate_metric(d.entries());
  json summary = {{"format", kInstanceFormat},
                  {"n", d.players()},
                  {"kind", a.kind},
                  {"seed", a.seed},
                  {"symmetric", report.symmetric},
                  {"valid", report.valid},
                  {"violations", report.violations.size()}};
  if (!a.out.empty()) {
    write_json_file(a.out, instance_to_json(d));
    summary["out"] = a.out;
  } else {
    summary["instance"] = instance_to_json(d);
  }
  out << summary.dump(2) << '\n';
  return report.valid ? kExitOk : kExitInput;
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string path;
  std::string concepts = "core,cos,eps-core,alpha,semicore,coss,eps-semicore,bounds";
  std::string weight = "strong";
  std::string game = "tsg";
  int jobs = 1;
};

const std::set<std::string> kConcepts = {"core", "cos", "eps-core", "alpha", "semicore", "coss", "eps-semicore",
                                         "bounds"};
const std::set<std::string> kCoreFamily = {"core", "cos", "eps-core", "alpha"};

void require_verified(const CostGame& g, const StabilityResult& r, double tol) {
  const double violation = witness_violation(g, r);
  if (violation > tol)
    throw Error(std::string("witness re-verification failed for ") + to_string(r.concept_kind) +
                " (violation " + std::to_string(violation) + ")");
}

int cmd_analyze(const AnalyzeArgs& a, double tol, std::ostream& out) {
  const std::vector<std::string> concepts = split_list(a.concepts);
  if (concepts.empty()) throw UsageError("no concepts requested");
  for (const auto& c : concepts)
    if (!kConcepts.count(c)) throw UsageError("unknown concept '" + c + "'");
  const Weight weight = [&] {
    try {
      return parse_weight(a.weight);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();
  if (a.game != "tsg" && a.game != "mcst") throw UsageError("--game must be tsg or mcst");

  Stopwatch load_clock;
  InputFile input = read_input_file(a.path);
  json descriptor = {{"path", a.path}};
  CostGame g = std::visit(
      [&](auto& v) -> CostGame {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DistanceMatrix>) {
          descriptor["format"] = kInstanceFormat;
          descriptor["symmetric"] = v.symmetric();
          descriptor["seed"] = v.seed() ? json(*v.seed()) : json(nullptr);
          if (!v.generator().empty()) descriptor["generator"] = v.generator();
          return a.game == "mcst" ? CostGame::mcst(v) : CostGame::tsg(v);
        } else {
          descriptor["format"] = kCostGameFormat;
          return std::move(v);
        }
      },
      input);
  const int n = g.players();
  descriptor["n"] = n;

  const bool wants_core_family =
      std::any_of(concepts.begin(), concepts.end(), [](const auto& c) { return kCoreFamily.count(c) > 0; });
  if ((wants_core_family || g.kind() == GameKind::Tsg) && n > kCapCostTable)
    throw CapacityError("requested concepts need every coalition cost", kCapCostTable);
  const bool wants_semicore_family = std::any_of(concepts.begin(), concepts.end(), [](const auto& c) {
    return !kCoreFamily.count(c);
  });
  if (wants_semicore_family && n < 2) throw DomainError("semicore concepts need at least two players");

  json timing = {{"load", load_clock.elapsed_ms()}};
  json report = {{"instance", descriptor}, {"game", to_string(g.kind())}, {"tol", tol}};
  if (wants_core_family) {
    Stopwatch clock;
    const std::vector<double> table = all_costs(g, a.jobs);
    timing["cost_table"] = clock.elapsed_ms();
    report["cost_table"] = {{"coalitions", table.size() - 1}, {"digest", digest(table)}};
  } else {
    report["cost_table"] = {{"on_demand", true}};
  }

  json results = json::array();
  json bounds = nullptr;
  for (const auto& c : concepts) {
    Stopwatch clock;
    if (c == "bounds") {
      bounds = to_json(bounds_report(g, tol));
    } else {
      StabilityResult r;
      if (c == "core") {
        r = cost_of_stability(g, tol);
        r.concept_kind = Concept::Core;
      } else if (c == "cos") {
        r = cost_of_stability(g, tol);
      } else if (c == "eps-core") {
        r = optimal_eps_core(g, weight, tol);
      } else if (c == "alpha") {
        r = optimal_alpha_core(g, tol);
      } else if (c == "semicore") {
        r = cost_of_semicore_stability_lp(g, tol);
        r.concept_kind = Concept::Semicore;
      } else if (c == "coss") {
        r = cost_of_semicore_stability_lp(g, tol);
      } else {
        r = optimal_eps_semicore_lp(g, weight, tol);
      }
      require_verified(g, r, tol);
      results.push_back(to_json(r));
    }
    timing[c] = clock.elapsed_ms();
  }
  report["results"] = results;
  report["bounds"] = bounds;
  report["timing_ms"] = timing;
  out << report.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- batch

const std::vector<std::string> kCsvColumns = {
    "instance_id", "n",     "symmetric", "c_grand", "cos",       "wOeC",      "sOeC",
    "alpha",       "coss",  "sOeS",      "bound_mst", "bound_max_marginal", "bound_avg_ir", "semicore_empty"};

struct Family {
  std::string id;
  std::string kind;
  std::string game = "tsg";
  int n_lo = 0, n_hi = 0;
  std::uint64_t seed_lo = 0, seed_hi = 0;
  double box = 100.0;
  int attempts = 2000;
  std::vector<std::pair<std::string, double>> checks;
};

struct Instance {
  std::string id;
  int n = 0;
  std::uint64_t seed = 0;
  std::optional<DistanceMatrix> distances;
  std::shared_ptr<CostGame> game;
};

// Everything the checks and the CSV row read; core-family fields are absent
// above the cost-table cap.
struct Metrics {
  std::optional<bool> symmetric;
  double c_grand = 0.0;
  std::optional<double> cos, woec, soec, alpha;
  std::optional<Allocation> core_x;
  std::optional<double> coss, soes;
  std::optional<double> bound_mst, bound_max_marginal, bound_avg_ir;
  std::optional<bool> semicore_empty;
  std::optional<bool> subadditive;
  std::string error;
};

bool is_tsg(const Instance& inst) { return inst.game->kind() == GameKind::Tsg; }

Metrics measure(const Instance& inst, double tol) {
  Metrics m;
  const CostGame& g = *inst.game;
  const int n = g.players();
  try {
    if (inst.distances) m.symmetric = inst.distances->symmetric();
    m.c_grand = g.grand_cost();
    if (n <= kCapCostTable) {
      const StabilityResult cos = cost_of_stability(g, tol);
      m.cos = cos.value;
      if (cos.status == StabilityStatus::AlreadyStable) m.core_x = cos.witness;
      m.woec = optimal_eps_core(g, Weight::Weak, tol).value;
      m.soec = optimal_eps_core(g, Weight::Strong, tol).value;
      if (m.c_grand > 0.0) m.alpha = optimal_alpha_core(g, tol).value;
    }
    if (n <= kCapSubadditivity) m.subadditive = is_subadditive(g, tol).subadditive;
    if (n >= 2) {
      m.coss = cost_of_semicore_stability_lp(g, tol).value;
      m.soes = optimal_eps_semicore_lp(g, Weight::Strong, tol).value;
      m.semicore_empty = semicore_empty_criterion(g, tol);
      if (is_tsg(inst)) m.bound_avg_ir = bound_coss_avg_ir(*inst.distances).value;
      if (!m.subadditive || *m.subadditive) m.bound_max_marginal = bound_coss_max_marginal(g, tol).value;
    }
    if (is_tsg(inst) && inst.distances->symmetric() && n <= kCapCostTable)
      m.bound_mst = bound_cos_mst(*inst.distances, tol).value;
  } catch (const std::exception& e) {
    m.error = e.what();
  }
  return m;
}

enum class Verdict { Pass, Fail, Skip };

struct CheckOutcome {
  Verdict verdict = Verdict::Skip;
  std::string detail;
};

using CheckFn = std::function<CheckOutcome(const Instance&, const Metrics&, double)>;

CheckOutcome verdict(bool ok, std::string detail) { return {ok ? Verdict::Pass : Verdict::Fail, std::move(detail)}; }

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

const std::map<std::string, CheckFn>& check_registry() {
  static const std::map<std::string, CheckFn> registry = {
      {"core_nonempty",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.cos) return {};
         return verdict(*m.cos <= tol, "CoS = " + num(*m.cos));
       }},
      {"semicore_nonempty",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.coss) return {};
         return verdict(*m.coss <= tol, "CoSS = " + num(*m.coss));
       }},
      {"subadditive",
       [](const Instance&, const Metrics& m, double) -> CheckOutcome {
         if (!m.subadditive) return {};
         return verdict(*m.subadditive, "pairwise subadditivity scan");
       }},
      {"coss_formula_eq_lp",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.semicore_empty || !*m.semicore_empty) return {};
         const double closed = coss_closed_form(*inst.game, SubadditivityCheck::Assume, tol);
         const double lowest = coss_closed_form_point(*inst.game, SubadditivityCheck::Assume, tol).minCoeff();
         return verdict(std::abs(closed - *m.coss) <= tol,
                        "closed " + num(closed) + " vs LP " + num(*m.coss) + ", min closed-form payment " + num(lowest));
       }},
      {"soes_formula_eq_lp",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.semicore_empty || !*m.semicore_empty) return {};
         const double closed = soes_closed_form(*inst.game, SubadditivityCheck::Assume, tol);
         const double lowest = soes_closed_form_point(*inst.game, SubadditivityCheck::Assume, tol).minCoeff();
         return verdict(std::abs(closed - *m.soes) <= tol,
                        "closed " + num(closed) + " vs LP " + num(*m.soes) + ", min closed-form payment " + num(lowest));
       }},
      {"coss_soes_ratio",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.coss) return {};
         const double n = inst.game->players();
         const double rhs = n / (n - 1.0) * *m.soes;
         return verdict(std::abs(*m.coss - rhs) <= tol, "CoSS " + num(*m.coss) + " vs n/(n-1) sOeS " + num(rhs));
       }},
      {"cos_eq_n_woec",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.cos || *m.cos <= tol) return {};
         const double rhs = inst.game->players() * *m.woec;
         return verdict(std::abs(*m.cos - rhs) <= tol, "CoS " + num(*m.cos) + " vs n wOeC " + num(rhs));
       }},
      {"alpha_relation",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.cos || !m.alpha) return {};
         const double rhs = m.c_grand * (1.0 - 1.0 / *m.alpha);
         return verdict(std::abs(*m.cos - rhs) <= tol, "CoS " + num(*m.cos) + " vs c(N)(1 - 1/alpha) " + num(rhs));
       }},
      {"alpha_le_3_2",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!is_tsg(inst) || !m.alpha) return {};
         return verdict(*m.alpha <= 1.5 + tol && *m.cos <= m.c_grand / 3.0 + tol,
                        "alpha " + num(*m.alpha) + ", CoS " + num(*m.cos) + ", c(N) " + num(m.c_grand));
       }},
      {"cos_mst_bound",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.bound_mst || !m.cos) return {};
         return verdict(*m.cos <= *m.bound_mst + tol && *m.bound_mst <= 0.5 * m.c_grand + tol,
                        "CoS " + num(*m.cos) + ", bound " + num(*m.bound_mst) + ", c(N) " + num(m.c_grand));
       }},
      {"coss_max_marginal_bound",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.bound_max_marginal || !m.coss) return {};
         return verdict(*m.coss <= *m.bound_max_marginal + tol,
                        "CoSS " + num(*m.coss) + " vs bound " + num(*m.bound_max_marginal));
       }},
      {"coss_avg_ir_bound",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.bound_avg_ir || !m.semicore_empty || !*m.semicore_empty) return {};
         return verdict(*m.coss <= *m.bound_avg_ir + tol,
                        "CoSS " + num(*m.coss) + " vs bound " + num(*m.bound_avg_ir));
       }},
      {"criterion_agrees_lp",
       [](const Instance&, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.semicore_empty) return {};
         return verdict(*m.semicore_empty == (*m.coss > tol),
                        std::string("criterion ") + (*m.semicore_empty ? "empty" : "nonempty") + ", CoSS " +
                            num(*m.coss));
       }},
      {"core_in_semicore",
       [](const Instance& inst, const Metrics& m, double tol) -> CheckOutcome {
         if (!m.core_x || inst.game->players() < 2) return {};
         const double v = semicore_violation(*inst.game, *m.core_x, 0.0);
         return verdict(v <= tol, "semicore violation of the core element " + num(v));
       }},
  };
  return registry;
}

std::pair<int, int> read_range(const json& f, const char* key) {
  const json& r = f.at(key);
  if (r.is_number_integer()) return {r.get<int>(), r.get<int>()};
  if (!r.is_array() || r.size() != 2) throw UsageError(std::string("'") + key + "' must be [lo, hi]");
  return {r[0].get<int>(), r[1].get<int>()};
}

std::vector<Family> parse_config(const json& config) {
  const std::set<std::string> kinds = {"euclidean",   "asymmetric",        "table-mixed", "table-semicore-stressed",
                                       "search-asymmetric", "search-euclidean"};
  std::vector<Family> out;
  try {
    if (!config.contains("families") || !config["families"].is_array()) throw UsageError("config needs 'families'");
    for (const json& f : config["families"]) {
      Family fam;
      fam.kind = f.at("kind").get<std::string>();
      if (!kinds.count(fam.kind)) throw UsageError("unknown family kind '" + fam.kind + "'");
      fam.id = f.value("id", fam.kind);
      fam.game = f.value("game", std::string("tsg"));
      if (fam.game != "tsg" && fam.game != "mcst") throw UsageError("family game must be tsg or mcst");
      std::tie(fam.n_lo, fam.n_hi) = read_range(f, "n");
      const auto [s_lo, s_hi] = read_range(f, "seeds");
      if (fam.n_lo < 1 || fam.n_hi < fam.n_lo || s_lo < 0 || s_hi < s_lo) throw UsageError("empty range in " + fam.id);
      fam.seed_lo = static_cast<std::uint64_t>(s_lo);
      fam.seed_hi = static_cast<std::uint64_t>(s_hi);
      fam.box = f.value("box", 100.0);
      fam.attempts = f.value("attempts", 2000);
      for (const json& c : f.value("checks", json::array())) {
        std::string name = c.is_string() ? c.get<std::string>() : c.at("name").get<std::string>();
        const double tol = c.is_object() ? c.value("tol", -1.0) : -1.0;
        if (!check_registry().count(name)) throw UsageError("unknown check '" + name + "'");
        fam.checks.emplace_back(std::move(name), tol);
      }
      out.push_back(std::move(fam));
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed batch config: ") + e.what());
  }
  return out;
}

// Instances of one family; search families may come up short.
std::vector<Instance> build_instances(const Family& fam, json& summary) {
  std::vector<Instance> out;
  int searched = 0, found = 0;
  for (int n = fam.n_lo; n <= fam.n_hi; ++n)
    for (std::uint64_t seed = fam.seed_lo; seed <= fam.seed_hi; ++seed) {
      Instance inst;
      inst.n = n;
      inst.seed = seed;
      inst.id = fam.id + "/n" + std::to_string(n) + "/s" + std::to_string(seed);
      if (fam.kind == "table-mixed" || fam.kind == "table-semicore-stressed") {
        const TableFamily tf = fam.kind == "table-mixed" ? TableFamily::Mixed : TableFamily::SemicoreStressed;
        inst.game = std::make_shared<CostGame>(random_subadditive_table(n, seed, tf));
      } else {
        if (fam.kind == "euclidean") {
          inst.distances = gen_euclidean(n, seed, fam.box);
        } else if (fam.kind == "asymmetric") {
          inst.distances = gen_asymmetric_metric(n, seed);
        } else {
          ++searched;
          const bool symmetric = fam.kind == "search-euclidean";
          TsgSearchResult r = find_empty_semicore_tsg(n, seed * static_cast<std::uint64_t>(fam.attempts), symmetric,
                                                      fam.attempts);
          if (!r.instance) continue;
          ++found;
          inst.distances = std::move(r.instance);
        }
        inst.game = std::make_shared<CostGame>(fam.game == "mcst" ? CostGame::mcst(*inst.distances)
                                                                 : CostGame::tsg(*inst.distances));
      }
      out.push_back(std::move(inst));
    }
  if (searched > 0) {
    summary["search"] = {{"searches", searched},
                         {"found", found},
                         {"attempts_per_search", fam.attempts},
                         {"shortfall", found == 0}};
  }
  return out;
}

std::string csv_cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string csv_row(const Instance& inst, const Metrics& m) {
  std::vector<std::string> cells = {
      inst.id,
      std::to_string(inst.n),
      m.symmetric ? (*m.symmetric ? "true" : "false") : "",
      num(m.c_grand),
      csv_cell(m.cos),
      csv_cell(m.woec),
      csv_cell(m.soec),
      csv_cell(m.alpha),
      csv_cell(m.coss),
      csv_cell(m.soes),
      csv_cell(m.bound_mst),
      csv_cell(m.bound_max_marginal),
      csv_cell(m.bound_avg_ir),
      m.semicore_empty ? (*m.semicore_empty ? "true" : "false") : ""};
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
  return line;
}

json instance_json(const Instance& inst) {
  if (inst.distances) return instance_to_json(*inst.distances);
  return cost_game_to_json(*inst.game);
}

struct BatchArgs {
  std::string config;
  std::string csv;
  int jobs = 1;
};

int cmd_batch(const BatchArgs& a, double tol_flag, bool tol_given, std::ostream& out) {
  const json config = [&] {
    try {
      return read_json_file(a.config);
    } catch (const ShapeError& e) {
      throw UsageError(e.what());
    }
  }();
  const std::vector<Family> families = parse_config(config);
  const double tol = tol_given ? tol_flag : config.value("tol", tol_flag);
  const std::string csv_path = !a.csv.empty() ? a.csv : config.value("csv", std::string());

  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw ShapeError("cannot write " + csv_path);
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) csv << (i ? "," : "") << kCsvColumns[i];
    csv << '\n';
  }

  json summary_families = json::array();
  long total_fail = 0;
  for (const Family& fam : families) {
    const bool table_family = fam.kind.starts_with("table-");
    json fsum = {{"id", fam.id}, {"kind", fam.kind}, {"game", table_family ? std::string("table") : fam.game}};
    const std::vector<Instance> instances = build_instances(fam, fsum);
    std::vector<Metrics> metrics(instances.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next++; i < instances.size(); i = next++) metrics[i] = measure(instances[i], tol);
    };
    {
      std::vector<std::jthread> pool;
      for (int w = 1; w < std::max(1, a.jobs); ++w) pool.emplace_back(worker);
      worker();
    }

    long errors = 0;
    json checks = json::object();
    for (const auto& [name, check_tol] : fam.checks) checks[name] = {{"pass", 0}, {"fail", 0}, {"skip", 0}};
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const Metrics& m = metrics[i];
      if (csv.is_open()) csv << csv_row(instances[i], m) << '\n';
      if (!m.error.empty()) {
        ++errors;
        ++total_fail;
        if (!fsum.contains("first_error"))
          fsum["first_error"] = {{"instance_id", instances[i].id}, {"message", m.error},
                                 {"instance", instance_json(instances[i])}};
        continue;
      }
      for (const auto& [name, check_tol] : fam.checks) {
        CheckOutcome o;
        try {
          o = check_registry().at(name)(instances[i], m, check_tol >= 0 ? check_tol : tol);
        } catch (const std::exception& e) {
          o = {Verdict::Fail, e.what()};
        }
        json& c = checks[name];
        if (o.verdict == Verdict::Pass) {
          c["pass"] = c["pass"].get<long>() + 1;
        } else if (o.verdict == Verdict::Skip) {
          c["skip"] = c["skip"].get<long>() + 1;
        } else {
          c["fail"] = c["fail"].get<long>() + 1;
          ++total_fail;
          if (!c.contains("first_counterexample"))
            c["first_counterexample"] = {{"instance_id", instances[i].id}, {"detail", o.detail},
                                         {"instance", instance_json(instances[i])}};
        }
      }
    }
    fsum["instances"] = instances.size();
    fsum["errors"] = errors;
    fsum["checks"] = checks;
    summary_families.push_back(std::move(fsum));
  }

  const json summary = {{"tol", tol}, {"families", summary_families}, {"failures", total_fail},
                        {"passed", total_fail == 0}, {"csv", csv_path.empty() ? json(nullptr) : json(csv_path)}};
  out << summary.dump(2) << '\n';
  return total_fail == 0 ? kExitOk : kExitSuiteFailure;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability analysis for subadditive cost games and traveling salesman games"};
  app.require_subcommand(1);
  double tol = kTolLp;
  int jobs = 1;

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a tsg-instance/v1 file");
  CLI::Option* kind_pos = gen->add_option("KIND", gen_args.kind, "euclidean or asymmetric");
  gen->add_option("--kind", gen_args.kind, "Same as the positional kind")->excludes(kind_pos);
  kind_pos->check(CLI::IsMember({"euclidean", "asymmetric"}));
  gen->add_option("--n", gen_args.n, "Number of players")->required();
  gen->add_option("--seed", gen_args.seed, "64-bit generator seed")->required();
  gen->add_option("--box", gen_args.box, "Side of the sampling square (euclidean)");
  gen->add_option("--out", gen_args.out, "Output path (stdout summary embeds the instance when absent)");

  AnalyzeArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Solve the requested stability concepts");
  CLI::App* bounds = app.add_subcommand("bounds", "Alias for analyze --concepts bounds");
  for (CLI::App* sub : {analyze, bounds}) {
    sub->add_option("instance", analyze_args.path, "tsg-instance/v1 or cost-game/v1 file")->required();
    sub->add_option("--weight", analyze_args.weight, "Slack weight: strong, weak or cost");
    sub->add_option("--game", analyze_args.game, "Cost oracle for matrix instances: tsg or mcst");
    sub->add_option("--jobs", jobs, "Worker threads for the cost table");
    sub->add_option("--tol", tol, "Constraint and optimality tolerance");
  }
  analyze->add_option("--concepts", analyze_args.concepts,
                      "Comma list of core,cos,eps-core,alpha,semicore,coss,eps-semicore,bounds");

  BatchArgs batch_args;
  CLI::App* batch = app.add_subcommand("batch", "Run property checks over seeded instance families");
  batch->add_option("config", batch_args.config, "Batch configuration (JSON)")->required();
  batch->add_option("--out", batch_args.csv, "Per-instance CSV path");
  batch->add_option("--jobs", jobs, "Concurrent instances");
  CLI::Option* batch_tol = batch->add_option("--tol", tol, "Check tolerance (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_args, out);
    if (*analyze) {
      analyze_args.jobs = jobs;
      return cmd_analyze(analyze_args, tol, out);
    }
    if (*bounds) {
      analyze_args.jobs = jobs;
      analyze_args.concepts = "bounds";
      return cmd_analyze(analyze_args, tol, out);
    }
    batch_args.jobs = jobs;
    return cmd_batch(batch_args, tol, batch_tol->count() > 0, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "capacity refusal: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage{"coopstab"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(storage.size()), argv.data(), out, err);
}

}  // namespace coopstab
