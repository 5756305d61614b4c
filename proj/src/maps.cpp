#include "hybrid/maps.hpp"

#include <algorithm>

#include "hybrid/errors.hpp"

namespace hybrid {

SmoothMap::SmoothMap(Region dom, Region cod, std::vector<Expr> components)
    : dom_(std::move(dom)), cod_(std::move(cod)),
      components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != cod_.dim())
    throw DimensionMismatch("component count differs from codomain dimension");
  for (const auto& c : components_)
    if (c.dim() > dom_.dim())
      throw DimensionMismatch(
          "component references a variable beyond the domain dimension");
}

SmoothMap SmoothMap::from_strings(Region dom, Region cod,
                                  const std::vector<std::string>& components) {
  std::vector<Expr> exprs;
  exprs.reserve(components.size());
  for (const auto& s : components) exprs.push_back(Expr::parse(s, dom.dim()));
  return SmoothMap(std::move(dom), std::move(cod), std::move(exprs));
}

SmoothMap SmoothMap::identity(const Region& r) {
  std::vector<Expr> exprs;
  for (int i = 0; i < r.dim(); ++i)
    exprs.push_back(Expr::variable(i, r.dim()));
  return SmoothMap(r, r, std::move(exprs));
}

SmoothMap SmoothMap::compose(const SmoothMap& outer, const SmoothMap& inner) {
  if (inner.cod() != outer.dom())
    throw DomainMismatch(
        "inner codomain differs from outer domain in map composition");
  std::vector<Expr> inner_exprs = inner.components_;
  // Pad so every outer variable has a substitute.
  while (static_cast<int>(inner_exprs.size()) < outer.dom_.dim())
    inner_exprs.push_back(Expr::constant(0.0));
  std::vector<Expr> exprs;
  exprs.reserve(outer.components_.size());
  for (const auto& c : outer.components_)
    exprs.push_back(c.substitute(inner_exprs));
  return SmoothMap(inner.dom_, outer.cod_, std::move(exprs));
}

bool SmoothMap::is_affine() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Expr& e) { return e.is_affine(); });
}

Point SmoothMap::operator()(const Point& x) const {
  Point y(cod_.dim());
  for (int i = 0; i < cod_.dim(); ++i)
    y[i] = components_[static_cast<std::size_t>(i)].eval(x);
  return y;
}

VectorField::VectorField(Region region, std::vector<Expr> components)
    : region_(std::move(region)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != region_.dim())
    throw DimensionMismatch("field component count differs from region dim");
}

VectorField VectorField::from_strings(
    const Region& region, const std::vector<std::string>& components) {
  std::vector<Expr> exprs;
  exprs.reserve(components.size());
  for (const auto& s : components)
    exprs.push_back(Expr::parse(s, region.dim()));
  return VectorField(region, std::move(exprs));
}

VectorField VectorField::clock(const Region& region) {
  if (region.dim() != 1)
    throw DimensionMismatch("clock field requires a 1-D region");
  return VectorField(region, {Expr::constant(1.0)});
}

bool VectorField::is_affine() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Expr& e) { return e.is_affine(); });
}

Point VectorField::operator()(const Point& x) const {
  Point v(region_.dim());
  for (int i = 0; i < region_.dim(); ++i)
    v[i] = components_[static_cast<std::size_t>(i)].eval(x);
  return v;
}

Point eval_map(const SmoothMap& m, const Point& x, double tol) {
  if (!m.dom().contains(x, tol))
    throw OutOfDomain("point outside map domain");
  Point y = m(x);
  if (!m.cod().contains(y, tol))
    throw OutOfDomain("image outside map codomain");
  return y;
}

Eigen::MatrixXd jacobian(const SmoothMap& m, const Point& x, double h) {
  const Region& dom = m.dom();
  if (!dom.contains(x, kContainmentTol))
    throw OutOfDomain("jacobian: point outside map domain");
  Eigen::MatrixXd J(m.cod().dim(), dom.dim());
  for (int j = 0; j < dom.dim(); ++j) {
    if (dom.degenerate_axis(j)) {
      J.col(j).setZero();
      continue;
    }
    Point xp = x, xm = x;
    bool up_ok = x[j] + h <= dom.hi()[j];
    bool down_ok = x[j] - h >= dom.lo()[j];
    if (up_ok && down_ok) {
      xp[j] += h;
      xm[j] -= h;
      J.col(j) = (m(xp) - m(xm)) / (2 * h);
    } else if (up_ok) {
      xp[j] += h;
      J.col(j) = (m(xp) - m(x)) / h;
    } else {
      xm[j] -= h;
      J.col(j) = (m(x) - m(xm)) / h;
    }
  }
  return J;
}

std::vector<DsViolation> check_ds_morphism(const SmoothMap& f,
                                           const VectorField& X,
                                           const VectorField& Xp,
                                           const std::vector<Point>& samples,
                                           double tol) {
  if (f.dom() != X.region() || f.cod() != Xp.region())
    throw OutOfDomain("check_ds_morphism: regions do not line up with map");
  std::vector<DsViolation> report;
  for (const auto& x : samples) {
    Point lhs = jacobian(f, x) * X(x);
    Point rhs = Xp(f(x));
    double r = (lhs - rhs).cwiseAbs().maxCoeff();
    if (r > tol) report.push_back({x, r});
  }
  return report;
}

}  // namespace hybrid
