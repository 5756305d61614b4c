#pragma once

#include <cstddef>
#include <cstdint>

namespace hybrid {

// Shared numeric defaults. All overridable per call.
inline constexpr double kContainmentTol = 1e-9;
inline constexpr double kWitnessTol = 1e-9;
inline constexpr double kResidualTol = 1e-6;
inline constexpr double kJacobianStep = 1e-6;

// Standard sample grid: per-axis equispaced points including endpoints,
// full tensor grid capped; beyond the cap a seeded random subsample.
inline constexpr int kGridPointsPerAxis = 17;
inline constexpr std::size_t kGridCap = 100000;
inline constexpr std::uint64_t kGridSeed = 0x9e3779b97f4a7c15ull;

}  // namespace hybrid
