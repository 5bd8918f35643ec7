#pragma once

#include <span>
#include <vector>

namespace cantorcalc {

/// How the open middle piece is removed at each construction step.
///
/// Proportional removes the fraction `xi` of every surviving interval, so
/// step k deletes an absolute length xi*((1-xi)/2)^(k-1) from each piece.
/// Absolute removes the absolute length xi^k from each piece at step k.
/// The two rules generate the same set exactly when xi = 1/3.
enum class RemovalMode { Proportional, Absolute };

/// Deepest construction level the builder accepts: below this, interval
/// lengths fall under the relative spacing of doubles near 1.
inline constexpr int kMaxDepth = 52;

struct CantorParams {
  double xi = 1.0 / 3.0;
  RemovalMode mode = RemovalMode::Proportional;
  int depth = 0;

  void validate() const;  // throws std::domain_error / std::invalid_argument
};

struct Interval {
  double left = 0.0;
  double right = 0.0;
  double length() const { return right - left; }
};

/// Finite-depth approximation of a middle-xi Cantor set: the 2^k closed
/// intervals of [0,1] that survive k removal steps, sorted and disjoint.
class PreFractal {
 public:
  PreFractal() = default;

  const CantorParams& params() const { return params_; }
  int depth() const { return params_.depth; }
  std::span<const Interval> intervals() const& { return intervals_; }
  std::span<const Interval> intervals() const&& = delete;  // would dangle

  /// Length of the shortest surviving interval.
  double resolution() const;

  /// Membership at this depth: x lies in some surviving closed interval.
  bool contains(double x) const;

  /// Flag function: 1 if the probe meets the depth-k set, else 0.
  /// A degenerate probe (right <= left) is treated as the point `left`.
  /// A proper probe is tested against its open interior, so a subdivision
  /// cell touching the set only at a shared construction endpoint reports 0.
  int flag(const Interval& probe) const;

 private:
  friend PreFractal build_prefractal(const CantorParams& params);

  CantorParams params_;
  std::vector<Interval> intervals_;
};

PreFractal build_prefractal(const CantorParams& params);

/// log 2 / (log 2 - log(1 - xi)); strictly decreasing, range (0,1).
double hausdorff_dimension(double xi);

/// Inverse of hausdorff_dimension: the xi whose set has dimension `zeta`.
/// zeta = 1 maps to 0 (no removal), which is outside CantorParams range.
double xi_for_dimension(double zeta);

/// Total length of the surviving intervals; (1-xi)^k in Proportional mode.
double lebesgue_measure(const PreFractal& set);

/// Length removed from the middle of an interval of length `len` at the
/// 1-based construction step `step`.
double removal_length(const CantorParams& params, double len, int step);

}  // namespace cantorcalc
