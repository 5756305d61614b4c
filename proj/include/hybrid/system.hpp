#pragma once

#include <map>
#include <string>
#include <vector>

#include "hybrid/graph.hpp"
#include "hybrid/relation.hpp"

namespace hybrid {

struct Violation {
  std::string where;    // node or edge id, or clause tag
  std::string message;
};

using Report = std::vector<Violation>;

/// A graph map into regions-and-relations: a region per node, a relation
/// per edge, with relation_of(e) subset region_of(tgt e) x region_of(src e).
struct HybridPhaseSpace {
  Graph graph;
  std::map<NodeId, Region> region_of;
  std::map<EdgeId, Relation> relation_of;

  const Region& region(const NodeId& a) const;
  const Relation& relation(const EdgeId& e) const;
};

/// A hybrid phase space with one vector field per node region.
struct HybridSystem {
  HybridPhaseSpace phase;
  std::map<NodeId, VectorField> field_of;

  const VectorField& field(const NodeId& a) const;
};

/// A chain of abutting closed intervals with unit clocks and one-point
/// relations {(t_i, t_i)}: the hybrid analogue of an interval with d/dt.
struct HybridTimeSystem {
  HybridSystem underlying;
  double t_minus = 0.0;
  std::vector<double> times;  // t_0 <= ... <= t_k

  int jump_count() const { return static_cast<int>(times.size()) - 1; }
};

/// Empty report iff every edge's relation has matching source/target regions
/// and every field (if checked through HybridSystem overload) sits on its
/// node's region.
Report validate_phase_space(const HybridPhaseSpace& H);

/// Phase-space check plus field/region matching per node.
Report validate_system(const HybridSystem& H);

/// Builds the chain-of-intervals time system for t_minus <= t_0 <= ... <= t_k.
/// Throws NotNondecreasing.
HybridTimeSystem make_time_system(double t_minus,
                                  const std::vector<double>& times);

/// Forgets the vector fields.
HybridPhaseSpace underlying_phase_space(const HybridSystem& H);

}  // namespace hybrid
