#include "cantorcalc/set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cantorcalc {

void CantorParams::validate() const {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    throw std::domain_error("CantorParams: xi must lie in (0,1), got " +
                            std::to_string(xi));
  }
  if (depth < 0) {
    throw std::invalid_argument("CantorParams: depth must be non-negative");
  }
  if (depth > kMaxDepth) {
    throw std::invalid_argument("CantorParams: depth " + std::to_string(depth) +
                                " exceeds the double-precision cap of " +
                                std::to_string(kMaxDepth));
  }
}

double removal_length(const CantorParams& params, double len, int step) {
  if (params.mode == RemovalMode::Proportional) return params.xi * len;
  return std::pow(params.xi, step);
}

PreFractal build_prefractal(const CantorParams& params) {
  params.validate();

  PreFractal out;
  out.params_ = params;
  out.intervals_ = {{0.0, 1.0}};

  for (int step = 1; step <= params.depth; ++step) {
    std::vector<Interval> next;
    next.reserve(out.intervals_.size() * 2);
    for (const Interval& iv : out.intervals_) {
      const double len = iv.length();
      const double gap = removal_length(params, len, step);
      if (gap >= len) {
        throw std::domain_error(
            "build_prefractal: removal length " + std::to_string(gap) +
            " at step " + std::to_string(step) +
            " meets or exceeds the surviving interval length " +
            std::to_string(len) + " (degenerate absolute-mode construction)");
      }
      const double half = 0.5 * (len - gap);
      next.push_back({iv.left, iv.left + half});
      next.push_back({iv.right - half, iv.right});
    }
    out.intervals_ = std::move(next);
  }
  return out;
}

double PreFractal::resolution() const {
  double shortest = 1.0;
  for (const Interval& iv : intervals_) shortest = std::min(shortest, iv.length());
  return shortest;
}

bool PreFractal::contains(double x) const {
  // first interval whose right endpoint is >= x
  auto it = std::lower_bound(
      intervals_.begin(), intervals_.end(), x,
      [](const Interval& iv, double v) { return iv.right < v; });
  return it != intervals_.end() && it->left <= x;
}

int PreFractal::flag(const Interval& probe) const {
  if (probe.right <= probe.left) return contains(probe.left) ? 1 : 0;
  auto it = std::lower_bound(
      intervals_.begin(), intervals_.end(), probe.left,
      [](const Interval& iv, double v) { return iv.right <= v; });
  return it != intervals_.end() && it->left < probe.right ? 1 : 0;
}

double hausdorff_dimension(double xi) {
  if (!(xi > 0.0) || !(xi < 1.0)) {
    throw std::domain_error("hausdorff_dimension: xi must lie in (0,1)");
  }
  const double log2 = std::log(2.0);
  return log2 / (log2 - std::log1p(-xi));
}

double xi_for_dimension(double zeta) {
  if (!(zeta > 0.0) || !(zeta <= 1.0)) {
    throw std::domain_error("xi_for_dimension: zeta must lie in (0,1]");
  }
  return -std::expm1((1.0 - 1.0 / zeta) * std::log(2.0));
}

double lebesgue_measure(const PreFractal& set) {
  double total = 0.0;
  for (const Interval& iv : set.intervals()) total += iv.length();
  return total;
}

}  // namespace cantorcalc
