#include "hybrid/system.hpp"

#include "hybrid/errors.hpp"

namespace hybrid {

const Region& HybridPhaseSpace::region(const NodeId& a) const {
  auto it = region_of.find(a);
  if (it == region_of.end())
    throw StructuralMismatch("node '" + a + "' has no region");
  return it->second;
}

const Relation& HybridPhaseSpace::relation(const EdgeId& e) const {
  auto it = relation_of.find(e);
  if (it == relation_of.end())
    throw StructuralMismatch("edge '" + e + "' has no relation");
  return it->second;
}

const VectorField& HybridSystem::field(const NodeId& a) const {
  auto it = field_of.find(a);
  if (it == field_of.end())
    throw StructuralMismatch("node '" + a + "' has no vector field");
  return it->second;
}

Report validate_phase_space(const HybridPhaseSpace& H) {
  Report report;
  for (const auto& a : H.graph.nodes())
    if (!H.region_of.count(a))
      report.push_back({a, "node has no region"});
  for (const auto& e : H.graph.edges()) {
    auto it = H.relation_of.find(e);
    if (it == H.relation_of.end()) {
      report.push_back({e, "edge has no relation"});
      continue;
    }
    const Relation& r = it->second;
    auto rs = H.region_of.find(H.graph.src(e));
    auto rt = H.region_of.find(H.graph.tgt(e));
    if (rs != H.region_of.end() && r.source() != rs->second)
      report.push_back({e, "relation source differs from region of src node"});
    if (rt != H.region_of.end() && r.target() != rt->second)
      report.push_back({e, "relation target differs from region of tgt node"});
    if (r.body() == Relation::Body::Finite) {
      for (const auto& [y, x] : r.pairs()) {
        if (!r.target().contains(y, kContainmentTol))
          report.push_back({e, "relation pair target point outside region"});
        if (!r.source().contains(x, kContainmentTol))
          report.push_back({e, "relation pair source point outside region"});
      }
    } else if (r.body() == Relation::Body::GuardReset) {
      if (!r.source().contains_box(r.guard_box()))
        report.push_back({e, "guard is not contained in the source region"});
    }
  }
  return report;
}

Report validate_system(const HybridSystem& H) {
  Report report = validate_phase_space(H.phase);
  for (const auto& a : H.phase.graph.nodes()) {
    auto it = H.field_of.find(a);
    if (it == H.field_of.end()) {
      report.push_back({a, "node has no vector field"});
      continue;
    }
    auto rg = H.phase.region_of.find(a);
    if (rg != H.phase.region_of.end() && it->second.region() != rg->second)
      report.push_back({a, "field region differs from node region"});
  }
  return report;
}

HybridTimeSystem make_time_system(double t_minus,
                                  const std::vector<double>& times) {
  if (times.empty())
    throw NotNondecreasing("time system requires at least t_0");
  if (t_minus > times.front())
    throw NotNondecreasing("t_minus exceeds t_0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw NotNondecreasing("jump times are not nondecreasing");

  const int k = static_cast<int>(times.size()) - 1;
  HybridTimeSystem T;
  T.t_minus = t_minus;
  T.times = times;
  T.underlying.phase.graph = chain_graph(k);
  double lo = t_minus;
  for (int i = 0; i <= k; ++i) {
    Region r = Region::interval(lo, times[static_cast<std::size_t>(i)]);
    NodeId node = std::to_string(i);
    T.underlying.phase.region_of.emplace(node, r);
    T.underlying.field_of.emplace(node, VectorField::clock(r));
    lo = times[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < k; ++i) {
    double ti = times[static_cast<std::size_t>(i)];
    Point p(1);
    p << ti;
    Relation rel = Relation::finite(
        T.underlying.phase.region(std::to_string(i + 1)),
        T.underlying.phase.region(std::to_string(i)), {{p, p}});
    T.underlying.phase.relation_of.emplace(std::to_string(i), rel);
  }
  return T;
}

HybridPhaseSpace underlying_phase_space(const HybridSystem& H) {
  return H.phase;
}

}  // namespace hybrid
