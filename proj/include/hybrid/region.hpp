#pragma once

#include <Eigen/Core>
#include <vector>

#include "hybrid/defaults.hpp"

namespace hybrid {

using Point = Eigen::VectorXd;

/// Process-wide seed used by sample_grid when the caller leaves the seed at
/// its default (CLI --seed plumbs through here).
std::uint64_t& global_grid_seed();

/// An axis-aligned box in R^n. Degenerate axes (lo == hi) are allowed and
/// model point intervals.
class Region {
 public:
  Region(Eigen::VectorXd lo, Eigen::VectorXd hi);

  /// Convenience: 1-D interval [lo, hi].
  static Region interval(double lo, double hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Eigen::VectorXd& lo() const { return lo_; }
  const Eigen::VectorXd& hi() const { return hi_; }
  bool degenerate_axis(int i) const { return lo_[i] == hi_[i]; }

  /// Throws DimensionMismatch if dim(x) != dim().
  bool contains(const Point& x, double tol = kContainmentTol) const;

  /// Axis-wise sub-box test (within tol on each bound).
  bool contains_box(const Region& inner, double tol = kContainmentTol) const;

  /// Nearest point of the box to x (componentwise clamp).
  Point clamp(const Point& x) const;

  bool operator==(const Region& other) const;
  bool operator!=(const Region& other) const { return !(*this == other); }

  /// The standard sample grid: per_axis equispaced points per axis including
  /// endpoints (1 on degenerate axes), full tensor product when it fits under
  /// cap, otherwise a seeded random subsample of cap points.
  std::vector<Point> sample_grid(int per_axis = kGridPointsPerAxis,
                                 std::size_t cap = kGridCap,
                                 std::uint64_t seed = kGridSeed) const;

 private:
  Eigen::VectorXd lo_, hi_;
};

}  // namespace hybrid
