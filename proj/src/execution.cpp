#include "hybrid/execution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <ostream>
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

bool close(const Point& a, const Point& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// Guard-hit detection within one integration step.

struct Hit {
  double dt;  // offset from the step start
  Point x;
};

constexpr double kBisectRel = 1e-10;

// First dt in (0, h] where pred(flow(dt)) becomes true, given pred false at 0
// and true at h. Returns the refined entry offset.
template <typename Flow, typename Pred>
double bisect_entry(const Flow& flow, const Pred& pred, double h) {
  double lo = 0.0, hi = h;
  for (int i = 0; i < 80 && hi - lo > kBisectRel * h; ++i) {
    double mid = 0.5 * (lo + hi);
    if (pred(flow(mid)))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Root of s(dt) = flow(dt)[axis] - level on [0, h], assuming a sign change.
template <typename Flow>
double bisect_crossing(const Flow& flow, int axis, double level, double h,
                       double s0) {
  double lo = 0.0, hi = h;
  for (int i = 0; i < 80 && hi - lo > kBisectRel * h; ++i) {
    double mid = 0.5 * (lo + hi);
    double s = flow(mid)[axis] - level;
    if ((s0 < 0) == (s < 0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Detects the first entry into a degenerate (point-like along some axes)
// guard box: bisect the crossing of the first degenerate axis, then require
// full membership at the crossing.
template <typename Flow>
std::optional<Hit> degenerate_box_hit(const Flow& flow, const Region& box,
                                      const Point& x, const Point& xn,
                                      double h, double tol) {
  int axis = -1;
  for (int i = 0; i < box.dim(); ++i)
    if (box.degenerate_axis(i)) {
      axis = i;
      break;
    }
  double level = box.lo()[axis];
  double s0 = x[axis] - level, s1 = xn[axis] - level;
  double dt;
  if ((s0 < 0) != (s1 < 0)) {
    dt = bisect_crossing(flow, axis, level, h, s0);
  } else if (std::abs(s1) <= tol) {
    dt = h;
  } else {
    return std::nullopt;
  }
  Point xh = flow(dt);
  if (!box.contains(xh, tol)) return std::nullopt;
  return Hit{dt, xh};
}

template <typename Flow>
std::optional<Hit> relation_hit(const Flow& flow, const Relation& rel,
                                const Point& x, const Point& xn, double h,
                                double tol) {
  switch (rel.body()) {
    case Relation::Body::GuardReset: {
      const Region& box = rel.guard_box();
      bool degen = false;
      for (int i = 0; i < box.dim(); ++i)
        if (box.degenerate_axis(i)) degen = true;
      if (degen) return degenerate_box_hit(flow, box, x, xn, h, tol);
      bool in0 = box.contains(x, tol), in1 = box.contains(xn, tol);
      if (in0 && in1) return Hit{h, xn};  // dwelling inside: next grid point
      if (!in0 && in1) {
        double dt = bisect_entry(
            flow, [&](const Point& p) { return box.contains(p, tol); }, h);
        return Hit{dt, flow(dt)};
      }
      return std::nullopt;
    }
    case Relation::Body::Finite: {
      std::optional<Hit> best;
      for (const auto& p : rel.guard_samples()) {
        Eigen::VectorXd lo = p, hi = p;
        Region box(lo, hi);
        auto hit = degenerate_box_hit(flow, box, x, xn, h, tol);
        if (hit && (!best || hit->dt < best->dt)) best = hit;
      }
      return best;
    }
    case Relation::Body::Predicate: {
      bool in0 = rel.guard_holds(x, tol), in1 = rel.guard_holds(xn, tol);
      if (in0 && in1) return Hit{h, xn};
      if (!in0 && in1) {
        double dt = bisect_entry(
            flow, [&](const Point& p) { return rel.guard_holds(p, tol); }, h);
        return Hit{dt, flow(dt)};
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Simulation state machine.

struct SegmentData {
  NodeId node;
  std::vector<std::pair<double, Point>> samples;
};

struct WorkItem {
  NodeId node;
  Point x;
  double t = 0.0;
  int jumps = 0;
  std::vector<double> jump_times;
  std::vector<NodeId> phi0_done;      // nodes of closed segments
  std::vector<EdgeId> phi1;
  std::vector<Curve> curves;          // closed segments
  std::vector<std::pair<double, Point>> samples;  // open segment
  std::vector<std::string> choices;
  std::size_t script_pos = 0;
};

struct EnabledJump {
  EdgeId edge;
  Point target;
};

class Simulator {
 public:
  Simulator(const HybridSystem& H, double t_start, double horizon, double step,
            const BranchPolicy& policy)
      : H_(H), t_start_(t_start), horizon_(horizon), step_(step),
        policy_(policy) {}

  std::vector<SimBranch> run(const NodeId& a0, const Point& x0) {
    if (!H_.phase.region(a0).contains(x0, kContainmentTol))
      throw OutOfDomain("simulate: x0 outside the region of node '" + a0 +
                        "'");
    WorkItem root;
    root.node = a0;
    root.x = x0;
    root.t = t_start_;
    root.samples.emplace_back(t_start_, x0);
    std::deque<WorkItem> stack;
    stack.push_back(std::move(root));
    std::vector<SimBranch> branches;
    while (!stack.empty() &&
           static_cast<int>(branches.size()) < policy_.max_branches) {
      WorkItem item = std::move(stack.front());
      stack.pop_front();
      step_item(std::move(item), stack, branches);
    }
    return branches;
  }

 private:
  using Mode = BranchPolicy::Mode;

  const VectorField& field(const NodeId& a) const { return H_.field(a); }

  std::vector<EdgeId> out_edges(const NodeId& a) const {
    auto out = H_.phase.graph.out_edges(a);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<EnabledJump> enabled_jumps(const NodeId& a,
                                         const Point& x) const {
    std::vector<EnabledJump> jumps;
    for (const auto& e : out_edges(a)) {
      const Relation& rel = H_.phase.relation(e);
      if (!rel.guard_holds(x, policy_.hit_tol)) continue;
      auto ys = rel.related(rel.source().clamp(x), policy_.hit_tol);
      int count = 0;
      for (const auto& y : ys) {
        jumps.push_back({e, y});
        if (++count >= 8) break;  // witness cap per jump
      }
    }
    return jumps;
  }

  // Runs one work item to its next branching point (or to completion),
  // pushing forks onto the stack and finished branches onto the output.
  void step_item(WorkItem item, std::deque<WorkItem>& stack,
                 std::vector<SimBranch>& branches) {
    for (;;) {
      // Jumps enabled at the current point: zero-length segment territory.
      auto now = enabled_jumps(item.node, item.x);
      if (!now.empty()) {
        if (policy_.mode == Mode::FirstGuardThenJump) {
          if (!try_jump(item, now.front(), branches)) return;
          continue;
        }
        if (policy_.mode == Mode::InteractiveScript) {
          if (!scripted_jump(item, now, branches)) return;
          continue;
        }
        // Exhaustive: fork over each jump now, plus flowing onwards.
        fork(item, now, stack, branches, /*allow_continue=*/true);
        return;
      }

      if (item.t >= horizon_) {
        finish(std::move(item), BranchStatus::Completed, "", branches);
        return;
      }

      double h = std::min(step_, horizon_ - item.t);
      const VectorField& X = field(item.node);
      const Region& region = H_.phase.region(item.node);
      Point x = item.x;
      auto flow = [&X, &x](double dt) { return rk4_step(X, x, dt); };
      Point xn = flow(h);

      // Earliest guard hit within the step, in edge-id order on ties.
      std::optional<Hit> best;
      EdgeId best_edge;
      for (const auto& e : out_edges(item.node)) {
        auto hit = relation_hit(flow, H_.phase.relation(e), x, xn, h,
                                policy_.hit_tol);
        if (hit && (!best || hit->dt < best->dt - kBisectRel * h)) {
          best = hit;
          best_edge = e;
        }
      }

      if (!region.contains(xn, kContainmentTol)) {
        double dt_exit = 0.0;
        {
          double lo = 0.0, hi = h;
          for (int i = 0; i < 80 && hi - lo > kBisectRel * h; ++i) {
            double mid = 0.5 * (lo + hi);
            if (region.contains(flow(mid), kContainmentTol))
              lo = mid;
            else
              hi = mid;
          }
          dt_exit = lo;
        }
        if (best && best->dt <= dt_exit + kBisectRel * h) {
          hit_and_continue(item, best_edge, *best, stack, branches);
          return;
        }
        Point x_exit = flow(dt_exit);
        auto at_exit = enabled_jumps(item.node, x_exit);
        item.samples.emplace_back(item.t + dt_exit, x_exit);
        item.t += dt_exit;
        item.x = x_exit;
        if (!at_exit.empty()) {
          if (policy_.mode == Mode::Exhaustive) {
            fork(item, at_exit, stack, branches, /*allow_continue=*/false);
          } else if (policy_.mode == Mode::InteractiveScript) {
            if (scripted_jump(item, at_exit, branches)) step_one_more(item, stack);
          } else {
            if (try_jump(item, at_exit.front(), branches))
              step_one_more(item, stack);
          }
          return;
        }
        finish(std::move(item), BranchStatus::Blocked,
               "flow left the region with no enabled guard", branches);
        return;
      }

      if (best) {
        hit_and_continue(item, best_edge, *best, stack, branches);
        return;
      }

      item.samples.emplace_back(item.t + h, xn);
      item.t += h;
      item.x = xn;
    }
  }

  void step_one_more(WorkItem item, std::deque<WorkItem>& stack) {
    stack.push_front(std::move(item));
  }

  void hit_and_continue(WorkItem item, const EdgeId& edge, const Hit& hit,
                        std::deque<WorkItem>& stack,
                        std::vector<SimBranch>& branches) {
    double t_hit = item.t + hit.dt;
    if (hit.dt > 0) item.samples.emplace_back(t_hit, hit.x);
    item.t = t_hit;
    item.x = hit.x;
    auto now = enabled_jumps(item.node, item.x);
    if (now.empty()) {
      // Guard tolerance rejected the refined point; resume flowing.
      stack.push_front(std::move(item));
      return;
    }
    if (policy_.mode == Mode::FirstGuardThenJump) {
      if (try_jump(item, now.front(), branches))
        stack.push_front(std::move(item));
      return;
    }
    if (policy_.mode == Mode::InteractiveScript) {
      if (scripted_jump(item, now, branches)) stack.push_front(std::move(item));
      return;
    }
    (void)edge;
    fork(item, now, stack, branches, /*allow_continue=*/true);
  }

  // Exhaustive fork: one work item per enabled jump, plus optionally one that
  // keeps flowing past the guard. Pushed so that choices pop in order.
  void fork(const WorkItem& item, const std::vector<EnabledJump>& jumps,
            std::deque<WorkItem>& stack, std::vector<SimBranch>& branches,
            bool allow_continue) {
    std::vector<WorkItem> forks;
    for (std::size_t j = 0; j < jumps.size(); ++j) {
      WorkItem w = item;
      w.choices.push_back("jump:" + jumps[j].edge + "#" + std::to_string(j));
      if (apply_jump(w, jumps[j], branches)) forks.push_back(std::move(w));
    }
    if (allow_continue && can_flow_on(item)) {
      WorkItem w = item;
      w.choices.push_back("flow");
      // Advance one step so the same point does not re-fork immediately.
      double h = std::min(step_, horizon_ - w.t);
      if (h > 0) {
        Point xn = rk4_step(field(w.node), w.x, h);
        if (H_.phase.region(w.node).contains(xn, kContainmentTol)) {
          w.samples.emplace_back(w.t + h, xn);
          w.t += h;
          w.x = xn;
          forks.push_back(std::move(w));
        }
      } else {
        forks.push_back(std::move(w));
      }
    }
    for (auto it = forks.rbegin(); it != forks.rend(); ++it)
      stack.push_front(std::move(*it));
  }

  bool can_flow_on(const WorkItem& item) const {
    if (item.t >= horizon_) return true;  // will finish as Completed
    double h = std::min(step_, horizon_ - item.t);
    Point xn = rk4_step(field(item.node), item.x, h);
    return H_.phase.region(item.node).contains(xn, kContainmentTol);
  }

  // Closes the open segment at the current time and performs the jump.
  // Returns false when the branch terminated (truncation).
  bool apply_jump(WorkItem& item, const EnabledJump& jump,
                  std::vector<SimBranch>& branches) {
    close_segment(item);
    item.jump_times.push_back(item.t);
    item.phi1.push_back(jump.edge);
    item.node = H_.phase.graph.tgt(jump.edge);
    item.x = jump.target;
    item.samples.emplace_back(item.t, jump.target);
    ++item.jumps;
    if (item.jumps >= policy_.max_jumps) {
      finish(std::move(item), BranchStatus::Truncated,
             "jump bound reached", branches);
      return false;
    }
    return true;
  }

  bool try_jump(WorkItem& item, const EnabledJump& jump,
                std::vector<SimBranch>& branches) {
    item.choices.push_back("jump:" + jump.edge + "#0");
    return apply_jump(item, jump, branches);
  }

  bool scripted_jump(WorkItem& item, const std::vector<EnabledJump>& enabled,
                     std::vector<SimBranch>& branches) {
    if (item.script_pos >= policy_.script.size()) {
      finish(std::move(item), BranchStatus::Blocked,
             "script exhausted with a guard enabled", branches);
      return false;
    }
    const auto& [edge, y] = policy_.script[item.script_pos];
    for (const auto& j : enabled) {
      if (j.edge == edge && close(j.target, y, policy_.hit_tol)) {
        item.choices.push_back("script:" + edge);
        ++item.script_pos;
        return apply_jump(item, {edge, y}, branches);
      }
    }
    finish(std::move(item), BranchStatus::Blocked,
           "scripted choice not enabled", branches);
    return false;
  }

  void close_segment(WorkItem& item) {
    Curve c{item.samples.front().first, item.t, item.samples,
            H_.phase.region(item.node)};
    item.curves.push_back(std::move(c));
    item.phi0_done.push_back(item.node);
    item.samples.clear();
  }

  void finish(WorkItem item, BranchStatus status, const std::string& note,
              std::vector<SimBranch>& branches) {
    if (!item.samples.empty()) close_segment(item);
    SimBranch b;
    b.status = status;
    b.note = note;
    b.choices = std::move(item.choices);
    std::vector<double> times = item.jump_times;
    times.push_back(item.curves.back().t1);
    b.exec.time_sys = make_time_system(t_start_, times);
    b.exec.phi0 = std::move(item.phi0_done);
    b.exec.phi1 = std::move(item.phi1);
    b.exec.curves = std::move(item.curves);
    branches.push_back(std::move(b));
  }

  const HybridSystem& H_;
  double t_start_, horizon_, step_;
  const BranchPolicy& policy_;
};

}  // namespace

// ---------------------------------------------------------------------------

Report validate_execution(const Execution& E, const HybridSystem& H,
                          double tol) {
  const std::size_t k1 = E.curves.size();
  if (E.phi0.size() != k1 || E.phi1.size() + 1 != k1 ||
      E.time_sys.times.size() != k1)
    throw StructuralMismatch("execution has inconsistent segment counts");

  Report report;
  const auto& times = E.time_sys.times;
  double prev = E.time_sys.t_minus;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < prev)
      report.push_back({"clause1", "jump times are not nondecreasing at index " +
                                       std::to_string(i)});
    prev = times[i];
  }

  for (std::size_t i = 0; i < k1; ++i) {
    if (!H.phase.graph.has_node(E.phi0[i])) {
      report.push_back({"clause2", "segment " + std::to_string(i) +
                                       " names unknown node '" + E.phi0[i] +
                                       "'"});
      continue;
    }
    double lo = (i == 0) ? E.time_sys.t_minus : times[i - 1];
    double hi = times[i];
    const Curve& c = E.curves[i];
    if (std::abs(c.t0 - lo) > 1e-9 || std::abs(c.t1 - hi) > 1e-9)
      report.push_back({"clause1", "segment " + std::to_string(i) +
                                       " does not span its time interval"});

    const Region& region = H.phase.region(E.phi0[i]);
    const VectorField& X = H.field(E.phi0[i]);
    for (const auto& [t, x] : c.samples) {
      (void)t;
      if (x.size() != region.dim() || !region.contains(x, tol)) {
        report.push_back({"clause4", "segment " + std::to_string(i) +
                                         " leaves its region"});
        break;
      }
    }
    // Integral-curve check by finite differences; point curves pass by the
    // containment test alone.
    const auto& s = c.samples;
    if (s.size() >= 3) {
      for (std::size_t j = 1; j + 1 < s.size(); ++j) {
        double h0 = s[j].first - s[j - 1].first;
        double h1 = s[j + 1].first - s[j].first;
        double span = h0 + h1;
        if (h0 <= 0 || h1 <= 0) continue;
        // The chord slope matches the derivative at the chord's time
        // midpoint to second order even on non-uniform spacing; compare it
        // against the field at the state interpolated there.
        Point d = (s[j + 1].second - s[j - 1].second) / span;
        double tm = s[j - 1].first + 0.5 * span;
        Point xm = tm <= s[j].first
                       ? Point(s[j - 1].second +
                               (tm - s[j - 1].first) / h0 *
                                   (s[j].second - s[j - 1].second))
                       : Point(s[j].second + (tm - s[j].first) / h1 *
                                                 (s[j + 1].second -
                                                  s[j].second));
        double r = (d - X(region.clamp(xm))).cwiseAbs().maxCoeff();
        double allow = tol + 0.25 * span * span;
        if (r > allow) {
          report.push_back(
              {"clause4", "segment " + std::to_string(i) +
                              " is not an integral curve (residual " +
                              std::to_string(r) + " at t = " +
                              std::to_string(s[j].first) + ")"});
          break;
        }
      }
    } else if (s.size() == 2) {
      double span = s[1].first - s[0].first;
      if (span > 0) {
        Point d = (s[1].second - s[0].second) / span;
        Point mid = 0.5 * (s[0].second + s[1].second);
        double r = (d - X(region.clamp(mid))).cwiseAbs().maxCoeff();
        if (r > tol + span * span)
          report.push_back({"clause4", "segment " + std::to_string(i) +
                                           " is not an integral curve"});
      }
    }
  }

  for (std::size_t i = 0; i + 1 < k1; ++i) {
    const EdgeId& e = E.phi1[i];
    if (!H.phase.graph.has_edge(e)) {
      report.push_back({"clause3", "unknown edge '" + e + "' at jump " +
                                       std::to_string(i)});
      continue;
    }
    if (H.phase.graph.src(e) != E.phi0[i] ||
        H.phase.graph.tgt(e) != E.phi0[i + 1])
      report.push_back({"clause3", "edge '" + e +
                                       "' does not connect segments " +
                                       std::to_string(i) + " -> " +
                                       std::to_string(i + 1)});
    else {
      const Point& x_end = E.curves[i].back();
      const Point& y_start = E.curves[i + 1].front();
      if (!H.phase.relation(e).member(y_start, x_end, tol))
        report.push_back(
            {"clause5", "jump " + std::to_string(i) + ": (" +
                            point_str(y_start) + "," + point_str(x_end) +
                            ") is not in the reset relation of edge '" + e +
                            "'"});
    }
  }
  return report;
}

std::vector<SimBranch> simulate(const HybridSystem& H, const NodeId& a0,
                                const Point& x0, double t_minus,
                                double horizon, double step,
                                const BranchPolicy& policy) {
  if (horizon < t_minus) throw Error("simulate: horizon precedes start time");
  if (step <= 0) throw Error("simulate: step must be positive");
  Simulator sim(H, t_minus, horizon, step, policy);
  auto branches = sim.run(a0, x0);
  std::stable_sort(branches.begin(), branches.end(),
                   [](const SimBranch& a, const SimBranch& b) {
                     return a.choices < b.choices;
                   });
  return branches;
}

Execution pushforward(const Execution& E, const HDSMorphism& m) {
  for (const auto& a : E.phi0) {
    if (!m.source_sys.phase.graph.has_node(a))
      throw SourceMismatch("execution visits node '" + a +
                           "' unknown to the morphism source");
  }
  for (const auto& e : E.phi1)
    if (!m.source_sys.phase.graph.has_edge(e))
      throw SourceMismatch("execution uses edge '" + e +
                           "' unknown to the morphism source");
  for (std::size_t i = 0; i < E.curves.size(); ++i)
    if (E.curves[i].region != m.source_sys.phase.region(E.phi0[i]))
      throw SourceMismatch("segment region differs from the morphism source");

  Execution out;
  out.time_sys = E.time_sys;
  for (const auto& a : E.phi0) out.phi0.push_back(m.phi.node(a));
  for (const auto& e : E.phi1) out.phi1.push_back(m.phi.edge(e));
  for (std::size_t i = 0; i < E.curves.size(); ++i)
    out.curves.push_back(map_curve(m.alpha(E.phi0[i]), E.curves[i]));
  return out;
}

void write_trajectory_csv(const Execution& E, std::ostream& os) {
  int dim = 0;
  for (const auto& c : E.curves)
    dim = std::max(dim, c.region.dim());
  os << "t,segment,node";
  for (int i = 1; i <= dim; ++i) os << ",x" << i;
  os << "\n";
  char buf[64];
  for (std::size_t i = 0; i < E.curves.size(); ++i) {
    for (const auto& [t, x] : E.curves[i].samples) {
      std::snprintf(buf, sizeof buf, "%.17g", t);
      os << buf << "," << i << "," << E.phi0[i];
      for (int j = 0; j < dim; ++j) {
        if (j < x.size()) {
          std::snprintf(buf, sizeof buf, "%.17g", x[j]);
          os << "," << buf;
        } else {
          os << ",";
        }
      }
      os << "\n";
    }
  }
}

std::string export_trajectory(const Execution& E) {
  std::ostringstream os;
  write_trajectory_csv(E, os);
  return os.str();
}

}  // namespace hybrid
