#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hybrid/maps.hpp"

namespace hybrid {

/// The domain (guard) of a relation, in the representation native to its
/// body: a sub-box, a finite point set, or a sampled point set.
struct GuardSet {
  enum class Kind { Box, Points, Sampled } kind;
  std::optional<Region> box;   // Kind::Box
  std::vector<Point> points;   // Kind::Points / Kind::Sampled
};

/// A set-theoretic relation R subset target x source, read as a generalized
/// map from source to target. Pairs are stored (y, x) with y in the target.
class Relation {
 public:
  enum class Body { Finite, GuardReset, Predicate };

  using RelatedFn = std::function<std::vector<Point>(const Point&, double)>;

  static Relation finite(Region target, Region source,
                         std::vector<std::pair<Point, Point>> pairs);
  static Relation guard_reset(Region target, Region source, Region guard,
                              SmoothMap reset);
  static Relation predicate(Region target, Region source, RelatedFn related,
                            std::vector<Point> guard_samples);

  Body body() const { return body_; }
  const Region& source() const { return source_; }
  const Region& target() const { return target_; }

  const std::vector<std::pair<Point, Point>>& pairs() const { return pairs_; }
  const Region& guard_box() const;     // GuardReset only
  const SmoothMap& reset() const;      // GuardReset only

  /// All y with (y, x) in R up to tol; empty when x is outside the guard.
  /// Throws OutOfDomain when x is outside the source region.
  std::vector<Point> related(const Point& x, double tol = kWitnessTol) const;

  /// Membership test for the pair (y, x).
  bool member(const Point& y, const Point& x, double tol = kWitnessTol) const;

  /// Representative source points of the guard: the listed x's (Finite),
  /// the standard grid of the guard box (GuardReset), or the sampler set.
  std::vector<Point> guard_samples() const;

  /// True if x lies in the guard within tol (i.e. some jump is enabled).
  bool guard_holds(const Point& x, double tol = kWitnessTol) const;

 private:
  Relation(Body body, Region target, Region source)
      : body_(body), target_(std::move(target)), source_(std::move(source)) {}

  Body body_;
  Region target_, source_;
  std::vector<std::pair<Point, Point>> pairs_;          // Finite
  std::optional<Region> guard_;                         // GuardReset
  std::optional<SmoothMap> reset_;                      // GuardReset
  RelatedFn related_fn_;                                // Predicate
  std::vector<Point> sampler_;                          // Predicate
};

/// The graph of a smooth map as a GuardReset relation with guard = f.dom.
Relation graph_of(const SmoothMap& f);

/// Relational composition S after R. Finite bodies compose to Finite;
/// GuardReset pairs compose to GuardReset when the inner image stays inside
/// the outer guard on the sample grid; everything else falls back to a
/// Predicate with chained witness search. Throws RegionMismatch.
Relation compose_relations(const Relation& S, const Relation& R,
                           double tol = kWitnessTol);

/// The projection of R to its source.
GuardSet domain_of(const Relation& R);

struct SubrelationViolation {
  Point y, x;
  std::string message;
};

struct SubrelationReport {
  std::vector<SubrelationViolation> counterexamples;
  std::size_t samples_used = 0;
  bool exact = false;  // true when R is Finite (verdict is not sampled)
  bool ok() const { return counterexamples.empty(); }
};

/// Checks R subset S as point sets, exactly for Finite R and at sample
/// resolution otherwise. Throws RegionMismatch on signature mismatch.
SubrelationReport is_subrelation(const Relation& R, const Relation& S,
                                 double tol = kWitnessTol);

}  // namespace hybrid
