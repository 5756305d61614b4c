#pragma once

#include <map>

#include "hybrid/system.hpp"

namespace hybrid {

/// A morphism of hybrid phase spaces: a graph map plus a smooth map per
/// source node, subject (on verification) to the per-edge relation-image
/// inclusion.
struct HyPhMorphism {
  HybridPhaseSpace source;
  HybridPhaseSpace target;
  GraphMap phi;
  std::map<NodeId, SmoothMap> alpha_of;

  const SmoothMap& alpha(const NodeId& a) const;
};

/// A morphism of hybrid dynamical systems: the phase-space morphism plus
/// (on verification) per-node field intertwining.
struct HDSMorphism {
  HybridSystem source_sys;
  HybridSystem target_sys;
  GraphMap phi;
  std::map<NodeId, SmoothMap> alpha_of;

  const SmoothMap& alpha(const NodeId& a) const;
  HyPhMorphism base() const;
};

struct MorphismReport {
  bool exact = false;          // all source relations finite, all maps affine
  std::size_t samples_used = 0;
  double max_residual = 0.0;   // worst intertwining residual seen
  Report violations;           // sorted by node/edge id

  bool ok() const { return violations.empty(); }
};

HyPhMorphism identity_morphism(const HybridPhaseSpace& H);
HDSMorphism identity_morphism(const HybridSystem& H);

/// Checks, for every source edge, that the image of its relation under the
/// node maps is included in the target relation. Exact for finite source
/// relations, sampled otherwise. Throws StructuralMismatch.
MorphismReport verify_hyph_morphism(const HyPhMorphism& m,
                                    double tol = kResidualTol);

/// Phase-space check plus the per-node intertwining of vector fields on the
/// standard sample grid of each node region.
MorphismReport verify_hds_morphism(const HDSMorphism& m,
                                   int samples_per_axis = kGridPointsPerAxis,
                                   double tol = kResidualTol);

/// Pasting composition: graph maps compose, node maps chain through phi.
HyPhMorphism compose_morphisms(const HyPhMorphism& n, const HyPhMorphism& m);
HDSMorphism compose_morphisms(const HDSMorphism& n, const HDSMorphism& m);

}  // namespace hybrid
