#include "hybrid/morphism.hpp"

#include <algorithm>
#include <sstream>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace {

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

const SmoothMap& lookup_alpha(const std::map<NodeId, SmoothMap>& alpha,
                              const NodeId& a) {
  auto it = alpha.find(a);
  if (it == alpha.end())
    throw StructuralMismatch("node '" + a + "' has no alpha map");
  return it->second;
}

struct EdgeCheckResult {
  Report violations;
  std::size_t samples = 0;
};

// Eq-3.1-style inclusion for one edge: push each (y, x) of the source
// relation through (alpha_tgt, alpha_src) and test membership in the target
// relation.
EdgeCheckResult check_edge_inclusion(const EdgeId& e, const Relation& R,
                                     const Relation& Q,
                                     const SmoothMap& alpha_src,
                                     const SmoothMap& alpha_tgt, double tol) {
  EdgeCheckResult res;
  auto check_pair = [&](const Point& y, const Point& x) {
    ++res.samples;
    Point yi = alpha_tgt(y);
    Point xi = alpha_src(x);
    if (!Q.member(yi, xi, tol))
      res.violations.push_back(
          {e, "image pair (" + point_str(yi) + "," + point_str(xi) +
                  ") of (" + point_str(y) + "," + point_str(x) +
                  ") is not in the target relation"});
  };
  if (R.body() == Relation::Body::Finite) {
    for (const auto& [y, x] : R.pairs()) check_pair(y, x);
  } else {
    for (const auto& x : R.guard_samples())
      for (const auto& y : R.related(x, tol)) check_pair(y, x);
  }
  return res;
}

bool structural_ok(const Graph& src_graph, const Graph& tgt_graph,
                   const GraphMap& phi) {
  if (!(phi.dom == src_graph) || !(phi.cod == tgt_graph)) return false;
  return validate_graph_map(phi).empty();
}

void sort_report(Report& r) {
  std::stable_sort(r.begin(), r.end(),
                   [](const Violation& a, const Violation& b) {
                     return a.where < b.where;
                   });
}

}  // namespace

const SmoothMap& HyPhMorphism::alpha(const NodeId& a) const {
  return lookup_alpha(alpha_of, a);
}

const SmoothMap& HDSMorphism::alpha(const NodeId& a) const {
  return lookup_alpha(alpha_of, a);
}

HyPhMorphism HDSMorphism::base() const {
  return HyPhMorphism{underlying_phase_space(source_sys),
                      underlying_phase_space(target_sys), phi, alpha_of};
}

HyPhMorphism identity_morphism(const HybridPhaseSpace& H) {
  HyPhMorphism m{H, H, identity_graph_map(H.graph), {}};
  for (const auto& a : H.graph.nodes())
    m.alpha_of.emplace(a, SmoothMap::identity(H.region(a)));
  return m;
}

HDSMorphism identity_morphism(const HybridSystem& H) {
  HDSMorphism m{H, H, identity_graph_map(H.phase.graph), {}};
  for (const auto& a : H.phase.graph.nodes())
    m.alpha_of.emplace(a, SmoothMap::identity(H.phase.region(a)));
  return m;
}

MorphismReport verify_hyph_morphism(const HyPhMorphism& m, double tol) {
  if (!structural_ok(m.source.graph, m.target.graph, m.phi))
    throw StructuralMismatch("morphism graph map does not validate");
  MorphismReport rep;
  rep.exact = true;
  for (const auto& a : m.source.graph.nodes()) {
    const SmoothMap& al = m.alpha(a);
    if (al.dom() != m.source.region(a) ||
        al.cod() != m.target.region(m.phi.node(a)))
      throw StructuralMismatch("alpha map for node '" + a +
                               "' has wrong domain or codomain");
    if (!al.is_affine()) rep.exact = false;
  }
  for (const auto& e : m.source.graph.edges()) {
    const Relation& R = m.source.relation(e);
    const Relation& Q = m.target.relation(m.phi.edge(e));
    if (R.body() != Relation::Body::Finite) rep.exact = false;
    auto res = check_edge_inclusion(
        e, R, Q, m.alpha(m.source.graph.src(e)),
        m.alpha(m.source.graph.tgt(e)), tol);
    rep.samples_used += res.samples;
    rep.violations.insert(rep.violations.end(), res.violations.begin(),
                          res.violations.end());
  }
  sort_report(rep.violations);
  return rep;
}

MorphismReport verify_hds_morphism(const HDSMorphism& m, int samples_per_axis,
                                   double tol) {
  MorphismReport rep = verify_hyph_morphism(m.base(), tol);
  for (const auto& a : m.source_sys.phase.graph.nodes()) {
    const SmoothMap& al = m.alpha(a);
    const VectorField& X = m.source_sys.field(a);
    const VectorField& Y = m.target_sys.field(m.phi.node(a));
    if (!X.is_affine() || !Y.is_affine()) rep.exact = false;
    auto grid = X.region().sample_grid(samples_per_axis);
    rep.samples_used += grid.size();
    // Track the worst residual even below tol, for reporting.
    for (const auto& x : grid) {
      Point lhs = jacobian(al, x) * X(x);
      Point rhs = Y(al(x));
      double r = (lhs - rhs).cwiseAbs().maxCoeff();
      rep.max_residual = std::max(rep.max_residual, r);
      if (r > tol)
        rep.violations.push_back(
            {a, "intertwining residual " + std::to_string(r) + " at " +
                    point_str(x)});
    }
  }
  sort_report(rep.violations);
  return rep;
}

HyPhMorphism compose_morphisms(const HyPhMorphism& n, const HyPhMorphism& m) {
  if (!(m.target.graph == n.source.graph))
    throw DomainMismatch("morphism composition: target/source graphs differ");
  HyPhMorphism c{m.source, n.target, compose_graph_maps(n.phi, m.phi), {}};
  for (const auto& a : m.source.graph.nodes())
    c.alpha_of.emplace(
        a, SmoothMap::compose(n.alpha(m.phi.node(a)), m.alpha(a)));
  return c;
}

HDSMorphism compose_morphisms(const HDSMorphism& n, const HDSMorphism& m) {
  if (!(m.target_sys.phase.graph == n.source_sys.phase.graph))
    throw DomainMismatch("morphism composition: target/source graphs differ");
  HDSMorphism c{m.source_sys, n.target_sys,
                compose_graph_maps(n.phi, m.phi), {}};
  for (const auto& a : m.source_sys.phase.graph.nodes())
    c.alpha_of.emplace(
        a, SmoothMap::compose(n.alpha(m.phi.node(a)), m.alpha(a)));
  return c;
}

}  // namespace hybrid
