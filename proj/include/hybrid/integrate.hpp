#pragma once

#include <utility>
#include <vector>

#include "hybrid/maps.hpp"

namespace hybrid {

/// A sampled integral curve on [t0, t1]. t0 == t1 gives a single-sample
/// point curve.
struct Curve {
  double t0 = 0.0;
  double t1 = 0.0;
  std::vector<std::pair<double, Point>> samples;  // strictly increasing t
  Region region;

  const Point& front() const { return samples.front().second; }
  const Point& back() const { return samples.back().second; }
};

/// One classical fourth-order Runge-Kutta step of size h from (t, x).
Point rk4_step(const VectorField& X, const Point& x, double h);

/// Fixed-step RK4 from t0 to t1 (final partial step lands exactly on t1).
/// Throws OutOfDomain if x0 is outside the region, LeftRegion (with an exit
/// time estimate) if a step exits the region by more than tol.
Curve integrate(const VectorField& X, const Point& x0, double t0, double t1,
                double step, double tol = kContainmentTol);

/// Applies a smooth map to every sample of a curve.
Curve map_curve(const SmoothMap& m, const Curve& c);

}  // namespace hybrid
