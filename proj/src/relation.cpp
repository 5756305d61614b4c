#include "hybrid/relation.hpp"

#include <algorithm>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace {

bool close(const Point& a, const Point& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

void push_unique(std::vector<Point>& out, const Point& y, double tol) {
  for (const auto& z : out)
    if (close(z, y, tol)) return;
  out.push_back(y);
}

}  // namespace

Relation Relation::finite(Region target, Region source,
                          std::vector<std::pair<Point, Point>> pairs) {
  Relation r(Body::Finite, std::move(target), std::move(source));
  for (const auto& [y, x] : pairs) {
    if (!r.target_.contains(y, kContainmentTol) ||
        !r.source_.contains(x, kContainmentTol))
      throw RegionMismatch("finite relation pair outside target x source");
  }
  r.pairs_ = std::move(pairs);
  return r;
}

Relation Relation::guard_reset(Region target, Region source, Region guard,
                               SmoothMap reset) {
  Relation r(Body::GuardReset, std::move(target), std::move(source));
  if (!r.source_.contains_box(guard))
    throw RegionMismatch("guard is not a sub-box of the source region");
  if (reset.cod() != r.target_)
    throw RegionMismatch("reset codomain differs from relation target");
  r.guard_ = std::move(guard);
  r.reset_ = std::move(reset);
  return r;
}

Relation Relation::predicate(Region target, Region source, RelatedFn related,
                             std::vector<Point> guard_samples) {
  Relation r(Body::Predicate, std::move(target), std::move(source));
  r.related_fn_ = std::move(related);
  r.sampler_ = std::move(guard_samples);
  return r;
}

const Region& Relation::guard_box() const {
  if (body_ != Body::GuardReset)
    throw StructuralMismatch("relation has no guard box");
  return *guard_;
}

const SmoothMap& Relation::reset() const {
  if (body_ != Body::GuardReset)
    throw StructuralMismatch("relation has no reset map");
  return *reset_;
}

std::vector<Point> Relation::related(const Point& x, double tol) const {
  if (!source_.contains(x, std::max(tol, kContainmentTol)))
    throw OutOfDomain("related: point outside the source region");
  std::vector<Point> out;
  switch (body_) {
    case Body::Finite:
      for (const auto& [py, px] : pairs_)
        if (close(px, x, tol)) push_unique(out, py, tol);
      break;
    case Body::GuardReset:
      if (guard_->contains(x, tol)) out.push_back((*reset_)(guard_->clamp(x)));
      break;
    case Body::Predicate:
      out = related_fn_(x, tol);
      break;
  }
  return out;
}

bool Relation::member(const Point& y, const Point& x, double tol) const {
  if (!source_.contains(x, std::max(tol, kContainmentTol))) return false;
  for (const auto& cand : related(x, tol))
    if (close(cand, y, tol)) return true;
  return false;
}

std::vector<Point> Relation::guard_samples() const {
  switch (body_) {
    case Body::Finite: {
      std::vector<Point> xs;
      for (const auto& [y, x] : pairs_) push_unique(xs, x, kWitnessTol);
      return xs;
    }
    case Body::GuardReset:
      return guard_->sample_grid();
    case Body::Predicate:
      return sampler_;
  }
  return {};
}

bool Relation::guard_holds(const Point& x, double tol) const {
  switch (body_) {
    case Body::Finite:
      for (const auto& [y, px] : pairs_)
        if (close(px, x, tol)) return true;
      return false;
    case Body::GuardReset:
      return guard_->contains(x, tol);
    case Body::Predicate:
      return !related_fn_(x, tol).empty();
  }
  return false;
}

Relation graph_of(const SmoothMap& f) {
  return Relation::guard_reset(f.cod(), f.dom(), f.dom(), f);
}

Relation compose_relations(const Relation& S, const Relation& R, double tol) {
  if (R.target() != S.source())
    throw RegionMismatch(
        "compose_relations: target of inner differs from source of outer");

  if (R.body() == Relation::Body::Finite &&
      S.body() == Relation::Body::Finite) {
    std::vector<std::pair<Point, Point>> pairs;
    for (const auto& [z, y] : S.pairs())
      for (const auto& [yp, x] : R.pairs())
        if ((y - yp).cwiseAbs().maxCoeff() <= tol) pairs.emplace_back(z, x);
    return Relation::finite(S.target(), R.source(), std::move(pairs));
  }

  if (R.body() == Relation::Body::GuardReset &&
      S.body() == Relation::Body::GuardReset) {
    bool closed = true;
    for (const auto& x : R.guard_box().sample_grid()) {
      if (!S.guard_box().contains(R.reset()(x), tol)) {
        closed = false;
        break;
      }
    }
    if (closed)
      return Relation::guard_reset(S.target(), R.source(), R.guard_box(),
                                   SmoothMap::compose(S.reset(), R.reset()));
  }

  // General fallback: chain witness search through the middle region.
  Relation Rc = R, Sc = S;
  auto related_fn = [Rc, Sc](const Point& x, double t) {
    std::vector<Point> out;
    for (const auto& y : Rc.related(x, t)) {
      if (!Sc.source().contains(y, std::max(t, kContainmentTol))) continue;
      for (const auto& z : Sc.related(Sc.source().clamp(y), t))
        push_unique(out, z, t);
    }
    return out;
  };
  return Relation::predicate(S.target(), R.source(), related_fn,
                             R.guard_samples());
}

GuardSet domain_of(const Relation& R) {
  switch (R.body()) {
    case Relation::Body::Finite:
      return {GuardSet::Kind::Points, std::nullopt, R.guard_samples()};
    case Relation::Body::GuardReset:
      return {GuardSet::Kind::Box, R.guard_box(), {}};
    case Relation::Body::Predicate: {
      // Keep only sampler points from which some target is reachable.
      std::vector<Point> pts;
      for (const auto& x : R.guard_samples())
        if (R.guard_holds(x, kWitnessTol)) pts.push_back(x);
      return {GuardSet::Kind::Sampled, std::nullopt, pts};
    }
  }
  return {GuardSet::Kind::Sampled, std::nullopt, {}};
}

SubrelationReport is_subrelation(const Relation& R, const Relation& S,
                                 double tol) {
  if (R.source() != S.source() || R.target() != S.target())
    throw RegionMismatch("is_subrelation: relation signatures differ");
  SubrelationReport rep;
  rep.exact = R.body() == Relation::Body::Finite;
  if (rep.exact) {
    rep.samples_used = R.pairs().size();
    for (const auto& [y, x] : R.pairs())
      if (!S.member(y, x, tol))
        rep.counterexamples.push_back({y, x, "pair of R not a member of S"});
    return rep;
  }
  auto xs = R.guard_samples();
  rep.samples_used = xs.size();
  for (const auto& x : xs) {
    for (const auto& y : R.related(x, tol))
      if (!S.member(y, x, tol))
        rep.counterexamples.push_back(
            {y, x, "sampled pair of R not a member of S"});
  }
  return rep;
}

}  // namespace hybrid
