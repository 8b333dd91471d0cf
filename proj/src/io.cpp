#include "coopstab/io.hpp"

#include <fstream>

#include "coopstab/errors.hpp"

namespace coopstab {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ShapeError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ShapeError(std::string("field '") + key + "' has the wrong type");
  }
}

void expect_format(const json& j, const char* format) {
  if (field<std::string>(j, "format") != format)
    throw ShapeError(std::string("expected format ") + format);
}

}  // namespace

json instance_to_json(const DistanceMatrix& d) {
  json rows = json::array();
  for (int i = 0; i < d.nodes(); ++i) {
    json row = json::array();
    for (int j = 0; j < d.nodes(); ++j) row.push_back(d(i, j));
    rows.push_back(std::move(row));
  }
  json out = {{"format", kInstanceFormat}, {"n", d.players()}, {"symmetric", d.symmetric()}, {"matrix", rows}};
  out["seed"] = d.seed() ? json(*d.seed()) : json(nullptr);
  if (!d.generator().empty()) out["generator"] = d.generator();
  return out;
}

DistanceMatrix instance_from_json(const json& j) {
  expect_format(j, kInstanceFormat);
  const int n = field<int>(j, "n");
  const auto rows = field<std::vector<std::vector<double>>>(j, "matrix");
  if (n < 1 || rows.size() != static_cast<std::size_t>(n) + 1)
    throw ShapeError("matrix must have n + 1 rows");
  Eigen::MatrixXd m(n + 1, n + 1);
  for (int r = 0; r <= n; ++r) {
    if (rows[r].size() != static_cast<std::size_t>(n) + 1) throw ShapeError("matrix must be square");
    for (int c = 0; c <= n; ++c) m(r, c) = rows[r][c];
  }
  DistanceMatrix d(std::move(m));
  if (field<bool>(j, "symmetric") != d.symmetric())
    throw DomainError("'symmetric' flag disagrees with the matrix");
  std::optional<std::uint64_t> seed;
  if (j.contains("seed") && !j.at("seed").is_null()) seed = field<std::uint64_t>(j, "seed");
  std::string generator = j.contains("generator") ? field<std::string>(j, "generator") : std::string();
  return d.with_provenance(seed, std::move(generator));
}

json cost_game_to_json(const CostGame& g) {
  const std::vector<double> table = all_costs(g);
  json costs = json::object();
  for (std::size_t s = 1; s < table.size(); ++s) costs[std::to_string(s)] = table[s];
  return {{"format", kCostGameFormat}, {"n", g.players()}, {"costs", costs}};
}

CostGame cost_game_from_json(const json& j) {
  expect_format(j, kCostGameFormat);
  const int n = field<int>(j, "n");
  if (n < 1 || n > kCapCostTable) throw ShapeError("cost-game files need 1 <= n <= 16");
  const json& costs = j.at("costs");
  if (!costs.is_object()) throw ShapeError("'costs' must be an object");
  const std::size_t subsets = std::size_t{1} << n;
  if (costs.size() != subsets - 1) throw ShapeError("'costs' needs all 2^n - 1 coalitions");
  std::vector<double> table(subsets, 0.0);
  std::vector<char> seen(subsets, 0);
  for (const auto& [key, value] : costs.items()) {
    std::size_t pos = 0;
    unsigned long mask = 0;
    try {
      mask = std::stoul(key, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != key.size() || mask == 0 || mask >= subsets || seen[mask])
      throw ShapeError("bad coalition key '" + key + "'");
    if (!value.is_number()) throw ShapeError("coalition cost must be a number");
    seen[mask] = 1;
    table[mask] = value.get<double>();
  }
  return CostGame::table(n, std::move(table));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ShapeError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ShapeError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw ShapeError("write failed for " + path.string());
}

InputFile read_input_file(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  const std::string format = field<std::string>(j, "format");
  if (format == kInstanceFormat) return instance_from_json(j);
  if (format == kCostGameFormat) return cost_game_from_json(j);
  throw ShapeError("unknown format '" + format + "'");
}

json to_json(const Allocation& x) {
  json out = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x(i));
  return out;
}

json to_json(const StabilityResult& r) {
  return {{"concept", to_string(r.concept_kind)},
          {"family", to_string(r.family.selector)},
          {"weight", to_string(r.family.weight)},
          {"value", r.value},
          {"alpha", r.alpha ? json(*r.alpha) : json(nullptr)},
          {"witness", to_json(r.witness)},
          {"status", to_string(r.status)}};
}

json to_json(const BoundsReport& b) {
  json out;
  if (b.cos_mst_bound) {
    out["cos_mst_bound"] = {{"value", b.cos_mst_bound->value},
                            {"witness", to_json(b.cos_mst_bound->witness)},
                            {"grand_cost", b.cos_mst_bound->grand_cost},
                            {"mst_grand_cost", b.cos_mst_bound->mst_grand_cost}};
  } else {
    out["cos_mst_bound"] = nullptr;
  }
  out["coss_max_marginal_bound"] = {{"value", b.coss_max_marginal_bound.value},
                                    {"max_marginal_player", b.coss_max_marginal_bound.max_marginal_player},
                                    {"witness", to_json(b.coss_max_marginal_bound.witness)}};
  if (b.coss_avg_ir_bound) {
    out["coss_avg_ir_bound"] = {{"value", b.coss_avg_ir_bound->value},
                                {"max_ir_player", b.coss_avg_ir_bound->max_ir_player}};
  } else {
    out["coss_avg_ir_bound"] = nullptr;
  }
  out["exact_coss"] = b.exact_coss;
  out["exact_soes"] = b.exact_soes;
  out["semicore_empty"] = b.semicore_empty;
  return out;
}

}  // namespace coopstab
