#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "coopstab/game.hpp"
#include "coopstab/metric.hpp"
#include "coopstab/semicore_analysis.hpp"
#include "coopstab/stability.hpp"

namespace coopstab {

using json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "tsg-instance/v1";
inline constexpr const char* kCostGameFormat = "cost-game/v1";

// tsg-instance/v1: {format, n, symmetric, seed, matrix} plus an optional
// "generator" identifier. Matrix rows are depot-first and row-major.
json instance_to_json(const DistanceMatrix& d);
DistanceMatrix instance_from_json(const json& j);

// cost-game/v1: {format, n, costs} with one entry per nonempty coalition,
// keyed by the decimal coalition mask (player i is bit i - 1).
json cost_game_to_json(const CostGame& g);
CostGame cost_game_from_json(const json& j);

// Either kind of input file, dispatched on "format".
using InputFile = std::variant<DistanceMatrix, CostGame>;
InputFile read_input_file(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

json to_json(const Allocation& x);
json to_json(const StabilityResult& r);
json to_json(const BoundsReport& b);

}  // namespace coopstab
