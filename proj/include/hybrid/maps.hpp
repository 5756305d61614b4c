#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hybrid/expr.hpp"
#include "hybrid/region.hpp"

namespace hybrid {

/// An expression-defined map between box regions. Smoothness is trusted;
/// what is checkable (finite evaluation, containment) is checked pointwise.
class SmoothMap {
 public:
  SmoothMap(Region dom, Region cod, std::vector<Expr> components);

  /// Parses each component string over dom.dim() variables.
  static SmoothMap from_strings(Region dom, Region cod,
                                const std::vector<std::string>& components);

  static SmoothMap identity(const Region& r);

  /// Composition by expression substitution: (outer . inner)(x) =
  /// outer(inner(x)). Throws DomainMismatch unless inner.cod == outer.dom.
  static SmoothMap compose(const SmoothMap& outer, const SmoothMap& inner);

  const Region& dom() const { return dom_; }
  const Region& cod() const { return cod_; }
  const std::vector<Expr>& components() const { return components_; }
  bool is_affine() const;

  /// Unchecked componentwise evaluation (finiteness still enforced).
  Point operator()(const Point& x) const;

 private:
  Region dom_, cod_;
  std::vector<Expr> components_;
};

/// An expression-defined section of the tangent bundle of a box region.
class VectorField {
 public:
  VectorField(Region region, std::vector<Expr> components);

  static VectorField from_strings(const Region& region,
                                  const std::vector<std::string>& components);

  /// The unit clock d/dt on a 1-D region.
  static VectorField clock(const Region& region);

  const Region& region() const { return region_; }
  const std::vector<Expr>& components() const { return components_; }
  bool is_affine() const;

  Point operator()(const Point& x) const;

 private:
  Region region_;
  std::vector<Expr> components_;
};

/// Checked evaluation: x must lie in m.dom and the image in m.cod, both
/// within tol. Throws OutOfDomain or NonFiniteValue.
Point eval_map(const SmoothMap& m, const Point& x,
               double tol = kContainmentTol);

/// Finite-difference differential: central differences where x +- h e_i
/// stays in the domain, one-sided at the boundary, zero columns along
/// degenerate axes. Exact for affine components up to roundoff.
Eigen::MatrixXd jacobian(const SmoothMap& m, const Point& x,
                         double h = kJacobianStep);

struct DsViolation {
  Point point;
  double residual;  // max-norm of Tf X - X' f at the point
};

/// Checks the intertwining Tf . X = X' . f at each sample point; reports
/// the points where the max-norm residual exceeds tol.
std::vector<DsViolation> check_ds_morphism(const SmoothMap& f,
                                           const VectorField& X,
                                           const VectorField& Xp,
                                           const std::vector<Point>& samples,
                                           double tol = kResidualTol);

}  // namespace hybrid
