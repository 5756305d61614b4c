#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hybrid/execution.hpp"
#include "hybrid/morphism.hpp"
#include "hybrid/system.hpp"

namespace hybrid {

inline constexpr const char* kSpecFormat = "hybrid-cat/1";

/// System-spec JSON: graph, per-node region bounds and field expressions,
/// per-edge relation bodies. Numbers may be JSON numbers or constant
/// expression strings (folded at load). Throws Error on malformed input.
HybridSystem parse_system(const nlohmann::json& j);
HybridSystem load_system(const std::filesystem::path& path);
nlohmann::json system_to_json(const HybridSystem& H);

/// Morphism-spec JSON: source/target system paths (relative to the spec
/// file), node/edge maps and per-node alpha expressions.
HDSMorphism load_morphism(const std::filesystem::path& path);

/// Structural equality used by the round-trip guarantee: same graphs,
/// regions, field/relation data (expressions compared by printed form).
bool systems_equal(const HybridSystem& a, const HybridSystem& b);

/// Rebuilds an execution from exported CSV rows against its system. Edge
/// choices are inferred: the lowest-id edge connecting consecutive discrete
/// states whose relation admits the observed jump. Throws Error /
/// SourceMismatch when the rows do not fit the system.
Execution read_trajectory_csv(std::istream& is, const HybridSystem& H,
                              double tol = kResidualTol);

}  // namespace hybrid
