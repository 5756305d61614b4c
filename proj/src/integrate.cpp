#include "hybrid/integrate.hpp"

#include <cmath>

#include "hybrid/errors.hpp"

namespace hybrid {

Point rk4_step(const VectorField& X, const Point& x, double h) {
  Point k1 = X(x);
  Point k2 = X(x + 0.5 * h * k1);
  Point k3 = X(x + 0.5 * h * k2);
  Point k4 = X(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Curve integrate(const VectorField& X, const Point& x0, double t0, double t1,
                double step, double tol) {
  const Region& region = X.region();
  if (t1 < t0) throw Error("integrate: t1 < t0");
  if (!region.contains(x0, tol))
    throw OutOfDomain("integrate: initial point outside region");
  Curve c{t0, t1, {}, region};
  c.samples.emplace_back(t0, x0);
  if (t0 == t1) return c;
  if (step <= 0) throw Error("integrate: step must be positive");

  double t = t0;
  Point x = x0;
  while (t < t1) {
    double h = std::min(step, t1 - t);
    Point xn = rk4_step(X, x, h);
    double tn = (t1 - t <= step) ? t1 : t + h;
    if (!region.contains(xn, tol)) {
      // Estimate where the flow left the box by bisecting the step.
      double lo = 0.0, hi = h;
      for (int it = 0; it < 60 && hi - lo > 1e-12 * h; ++it) {
        double mid = 0.5 * (lo + hi);
        if (region.contains(rk4_step(X, x, mid), tol))
          lo = mid;
        else
          hi = mid;
      }
      throw LeftRegion("integrate: trajectory left the region near t = " +
                           std::to_string(t + lo),
                       t + lo);
    }
    c.samples.emplace_back(tn, xn);
    t = tn;
    x = xn;
  }
  return c;
}

Curve map_curve(const SmoothMap& m, const Curve& c) {
  Curve out{c.t0, c.t1, {}, m.cod()};
  out.samples.reserve(c.samples.size());
  for (const auto& [t, x] : c.samples) out.samples.emplace_back(t, m(x));
  return out;
}

}  // namespace hybrid
