#pragma once

// Shared builders for the worked systems used across the test suites.

#include <random>

#include "hybrid/execution.hpp"
#include "hybrid/morphism.hpp"
#include "hybrid/system.hpp"

namespace hybrid::testing {

inline Point pt1(double x) {
  Point p(1);
  p << x;
  return p;
}

inline Point pt2(double x, double y) {
  Point p(2);
  p << x, y;
  return p;
}

// One node, one loop, region [0,1], unit field, reset {(0,1)}: the sawtooth.
inline HybridSystem sawtooth_system(const std::string& field = "1") {
  Region r = Region::interval(0, 1);
  HybridSystem H;
  H.phase.graph = make_graph({"*"}, {{"gamma", "*", "*"}});
  H.phase.region_of.emplace("*", r);
  H.phase.relation_of.emplace("gamma",
                              Relation::finite(r, r, {{pt1(0), pt1(1)}}));
  H.field_of.emplace("*", VectorField::from_strings(r, {field}));
  return H;
}

// One node, one loop on [0,1]^2, field (f0(x,y), f0(y,x)), reset
// {((0,0),(1,1))}: the square system the diagonal maps into.
inline HybridSystem square_system(const std::string& fxy = "1",
                                  const std::string& fyx = "1") {
  Eigen::VectorXd lo(2), hi(2);
  lo << 0, 0;
  hi << 1, 1;
  Region r(lo, hi);
  HybridSystem H;
  H.phase.graph = make_graph({"*"}, {{"alpha", "*", "*"}});
  H.phase.region_of.emplace("*", r);
  H.phase.relation_of.emplace(
      "alpha", Relation::finite(r, r, {{pt2(0, 0), pt2(1, 1)}}));
  H.field_of.emplace("*", VectorField::from_strings(r, {fxy, fyx}));
  return H;
}

// The diagonal morphism x -> (x, x) from the interval system with field
// f0(x,x) to the square system with field (f0(x,y), f0(y,x)).
inline HDSMorphism diagonal_morphism(const HybridSystem& interval_sys,
                                     const HybridSystem& square_sys) {
  HDSMorphism m{interval_sys, square_sys, {}, {}};
  m.phi.dom = interval_sys.phase.graph;
  m.phi.cod = square_sys.phase.graph;
  m.phi.node_map["*"] = "*";
  m.phi.edge_map["gamma"] = "alpha";
  m.alpha_of.emplace(
      "*", SmoothMap::from_strings(interval_sys.phase.region("*"),
                                   square_sys.phase.region("*"),
                                   {"x1", "x1"}));
  return m;
}

// The analytic sawtooth execution: jumps at 1..k, sigma_i(t) = t - i + 1,
// sampled at the given step, final segment ends at horizon.
inline Execution analytic_sawtooth_execution(int jumps, double horizon,
                                             double step = 1e-2) {
  std::vector<double> times;
  for (int i = 1; i <= jumps; ++i) times.push_back(i);
  times.push_back(horizon);
  Execution E;
  E.time_sys = make_time_system(0.0, times);
  Region r = Region::interval(0, 1);
  for (int i = 0; i <= jumps; ++i) {
    double lo = (i == 0) ? 0.0 : times[static_cast<std::size_t>(i - 1)];
    double hi = times[static_cast<std::size_t>(i)];
    Curve c{lo, hi, {}, r};
    for (double t = lo; t < hi - 1e-12; t += step)
      c.samples.emplace_back(t, pt1(t - i));
    c.samples.emplace_back(hi, pt1(hi - i));
    E.curves.push_back(std::move(c));
    E.phi0.push_back("*");
    if (i < jumps) E.phi1.push_back("gamma");
  }
  return E;
}

// Deterministic RNG for property tests.
inline std::mt19937_64 rng(std::uint64_t seed = 42) {
  return std::mt19937_64(seed);
}

}  // namespace hybrid::testing
