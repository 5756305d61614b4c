#include "hybrid/region.hpp"

#include <random>

#include "hybrid/errors.hpp"

namespace hybrid {

std::uint64_t& global_grid_seed() {
  static std::uint64_t seed = kGridSeed;
  return seed;
}

Region::Region(Eigen::VectorXd lo, Eigen::VectorXd hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size())
    throw DimensionMismatch("region bounds have different dimensions");
  if (lo_.size() == 0) throw DimensionMismatch("region must have dim >= 1");
  for (int i = 0; i < lo_.size(); ++i)
    if (lo_[i] > hi_[i])
      throw Error("region axis " + std::to_string(i + 1) + " has lo > hi");
}

Region Region::interval(double lo, double hi) {
  Eigen::VectorXd l(1), h(1);
  l << lo;
  h << hi;
  return Region(l, h);
}

bool Region::contains(const Point& x, double tol) const {
  if (x.size() != lo_.size())
    throw DimensionMismatch("point dimension differs from region dimension");
  for (int i = 0; i < x.size(); ++i)
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  return true;
}

bool Region::contains_box(const Region& inner, double tol) const {
  if (inner.dim() != dim()) return false;
  for (int i = 0; i < dim(); ++i)
    if (inner.lo_[i] < lo_[i] - tol || inner.hi_[i] > hi_[i] + tol)
      return false;
  return true;
}

Point Region::clamp(const Point& x) const {
  return x.cwiseMax(lo_).cwiseMin(hi_);
}

bool Region::operator==(const Region& other) const {
  return lo_.size() == other.lo_.size() && lo_ == other.lo_ &&
         hi_ == other.hi_;
}

std::vector<Point> Region::sample_grid(int per_axis, std::size_t cap,
                                       std::uint64_t seed) const {
  const int n = dim();
  std::vector<std::vector<double>> axis_values(static_cast<std::size_t>(n));
  std::size_t total = 1;
  bool overflow = false;
  for (int i = 0; i < n; ++i) {
    auto& vals = axis_values[static_cast<std::size_t>(i)];
    if (degenerate_axis(i)) {
      vals.push_back(lo_[i]);
    } else {
      for (int j = 0; j < per_axis; ++j)
        vals.push_back(lo_[i] + (hi_[i] - lo_[i]) * j / (per_axis - 1));
    }
    if (!overflow) {
      if (total > cap / vals.size() + 1) overflow = true;
      total *= vals.size();
      if (total > cap) overflow = true;
    }
  }

  std::vector<Point> grid;
  if (!overflow && total <= cap) {
    grid.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
      Point p(n);
      for (int i = 0; i < n; ++i)
        p[i] = axis_values[static_cast<std::size_t>(i)]
                          [idx[static_cast<std::size_t>(i)]];
      grid.push_back(p);
      int axis = n - 1;
      while (axis >= 0) {
        auto a = static_cast<std::size_t>(axis);
        if (++idx[a] < axis_values[a].size()) break;
        idx[a] = 0;
        --axis;
      }
      if (axis < 0) break;
    }
    return grid;
  }

  std::mt19937_64 rng(seed == kGridSeed ? global_grid_seed() : seed);
  grid.reserve(cap);
  for (std::size_t k = 0; k < cap; ++k) {
    Point p(n);
    for (int i = 0; i < n; ++i) {
      const auto& vals = axis_values[static_cast<std::size_t>(i)];
      std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
      p[i] = vals[pick(rng)];
    }
    grid.push_back(p);
  }
  return grid;
}

}  // namespace hybrid
