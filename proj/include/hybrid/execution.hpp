#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hybrid/integrate.hpp"
#include "hybrid/morphism.hpp"
#include "hybrid/system.hpp"

namespace hybrid {

/// An execution: a morphism out of a hybrid time system. phi0/phi1 are the
/// discrete state and edge sequences along the chain; curves(i) is the
/// integral-curve segment on [t_{i-1}, t_i].
struct Execution {
  HybridTimeSystem time_sys;
  std::vector<NodeId> phi0;   // k+1 nodes of the target graph
  std::vector<EdgeId> phi1;   // k edges
  std::vector<Curve> curves;  // k+1 segments
};

/// Resolves the nondeterminism of jumps during simulation.
struct BranchPolicy {
  enum class Mode { FirstGuardThenJump, Exhaustive, InteractiveScript };

  Mode mode = Mode::FirstGuardThenJump;
  int max_jumps = 1000;
  int max_branches = 32;
  /// Guard membership tolerance for hit detection.
  double hit_tol = 1e-7;
  /// InteractiveScript: consumed in order, one entry per jump.
  std::vector<std::pair<EdgeId, Point>> script;
};

enum class BranchStatus { Completed, Blocked, Truncated };

struct SimBranch {
  Execution exec;
  BranchStatus status = BranchStatus::Completed;
  std::string note;
  std::vector<std::string> choices;  // branch-choice labels, lexicographic key
};

/// Checks the definitional clauses of an execution against a system:
/// (1) nondecreasing times and segment spans, (2,3) graph-map compatibility,
/// (4) each segment is an integral curve of its node's field (finite
/// differences at sample resolution; point curves pass by containment),
/// (5) consecutive endpoints related by the edge relation.
Report validate_execution(const Execution& E, const HybridSystem& H,
                          double tol = kResidualTol);

/// Forward simulation with guard detection (per-step membership plus
/// bisection refinement of the entry time) and policy-driven branching.
/// Branches are ordered lexicographically by their choice sequences.
std::vector<SimBranch> simulate(const HybridSystem& H, const NodeId& a0,
                                const Point& x0, double t_minus,
                                double horizon, double step,
                                const BranchPolicy& policy = {});

/// Composes an execution with a system morphism: the discrete data maps
/// through phi, each curve through its node's alpha. By the pushforward
/// theorem the result validates against the target system.
Execution pushforward(const Execution& E, const HDSMorphism& m);

/// CSV rows `t,segment,node,x1..xn`, ordered by (segment, t), floats with
/// 17 significant digits. Jumps show as same-t rows in adjoining segments.
void write_trajectory_csv(const Execution& E, std::ostream& os);
std::string export_trajectory(const Execution& E);

}  // namespace hybrid
