#include "cantorcalc/staircase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cantorcalc {

double Subdivision::mesh() const {
  double m = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i)
    m = std::max(m, points[i] - points[i - 1]);
  return m;
}

void Subdivision::validate() const {
  if (points.size() < 2)
    throw std::invalid_argument("Subdivision: need at least two points");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1]))
      throw std::invalid_argument("Subdivision: points must strictly increase");
}

Subdivision Subdivision::uniform(double v, double w, int cells) {
  if (!(v < w) || cells < 1)
    throw std::invalid_argument("Subdivision::uniform: need v < w and cells >= 1");
  Subdivision q;
  q.points.reserve(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i)
    q.points.push_back(v + (w - v) * static_cast<double>(i) / cells);
  q.points.front() = v;
  q.points.back() = w;
  return q;
}

namespace {

void check_order(double zeta) {
  if (!(zeta > 0.0 && zeta <= 1.0))
    throw std::domain_error("order zeta must lie in (0,1], got " +
                            std::to_string(zeta));
}

// Endpoints of the depth-m construction that fall inside (v,w).
std::vector<double> aligned_points(const PreFractal& grid, double v, double w) {
  std::vector<double> pts;
  pts.push_back(v);
  for (const Interval& iv : grid.intervals()) {
    if (iv.left > v && iv.left < w) pts.push_back(iv.left);
    if (iv.right > v && iv.right < w) pts.push_back(iv.right);
  }
  pts.push_back(w);
  return pts;
}

// rho over the aligned subdivision, splitting any flagged cell wider than
// delta uniformly. delta <= 0 disables the mesh constraint.
double aligned_rho(const PreFractal& set, const std::vector<double>& pts,
                   double zeta, double delta) {
  double sum = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double a = pts[i - 1];
    const double b = pts[i];
    if (!(b > a)) continue;
    if (!set.flag({a, b})) continue;
    const double len = b - a;
    if (delta > 0.0 && len > delta * (1.0 + 1e-12)) {
      const int n = static_cast<int>(std::ceil(len / delta));
      for (int j = 0; j < n; ++j) {
        const double pa = a + len * static_cast<double>(j) / n;
        const double pb = (j + 1 == n) ? b : a + len * static_cast<double>(j + 1) / n;
        if (set.flag({pa, pb})) sum += std::pow(pb - pa, zeta);
      }
    } else {
      sum += std::pow(len, zeta);
    }
  }
  return sum / std::tgamma(zeta + 1.0);
}

}  // namespace

double rho_sum(const PreFractal& set, const Subdivision& q, double zeta) {
  check_order(zeta);
  q.validate();
  double sum = 0.0;
  for (std::size_t i = 1; i < q.points.size(); ++i) {
    const double a = q.points[i - 1];
    const double b = q.points[i];
    if (set.flag({a, b})) sum += std::pow(b - a, zeta);
  }
  return sum / std::tgamma(zeta + 1.0);
}

MassEstimate coarse_mass(const PreFractal& set, double v, double w,
                         double zeta, double delta) {
  check_order(zeta);
  if (!(v < w)) throw std::invalid_argument("coarse_mass: need v < w");
  if (!(delta > 0.0)) throw std::invalid_argument("coarse_mass: need delta > 0");
  const double res = set.resolution();
  if (delta < res * (1.0 - 1e-12)) {
    throw std::domain_error(
        "coarse_mass: delta " + std::to_string(delta) +
        " is below the set's resolution " + std::to_string(res) +
        " at depth " + std::to_string(set.depth()));
  }

  const CantorParams& base = set.params();
  MassEstimate est;
  est.zeta = zeta;
  est.delta = delta;
  est.value = std::numeric_limits<double>::infinity();

  for (int m = 0; m <= set.depth(); ++m) {
    CantorParams p = base;
    p.depth = m;
    const PreFractal grid = build_prefractal(p);
    if (grid.resolution() > delta * (1.0 + 1e-12)) continue;  // mesh not yet met
    const double value = aligned_rho(set, aligned_points(grid, v, w), zeta, delta);
    if (value < est.value) {
      est.value = value;
      est.depth_used = m;
    }
  }
  return est;
}

MassEstimate mass(const CantorParams& family, double v, double w, double zeta,
                  const MassOptions& opts) {
  check_order(zeta);
  if (!(v < w)) throw std::invalid_argument("mass: need v < w");

  std::vector<double> rho;
  for (int k = opts.min_depth; k <= opts.max_depth; ++k) {
    CantorParams p = family;
    p.depth = k;
    const PreFractal set = build_prefractal(p);
    rho.push_back(aligned_rho(set, aligned_points(set, v, w), zeta, 0.0));
  }

  MassEstimate est;
  est.zeta = zeta;
  est.delta = 0.0;
  est.depth_used = opts.max_depth;
  est.value = rho.back();

  const int window = std::min<int>(opts.ratio_window, static_cast<int>(rho.size()));
  bool all_up = true, all_down = true, all_flat = true;
  for (int i = static_cast<int>(rho.size()) - window + 1;
       i < static_cast<int>(rho.size()); ++i) {
    if (rho[i - 1] <= 0.0) {  // window touches an exact zero: nothing survives
      return {zeta, 0.0, 0.0, opts.max_depth, MassTrend::VanishingToZero};
    }
    const double r = rho[i] / rho[i - 1];
    if (!(r > 1.0 + opts.ratio_tol)) all_up = false;
    if (!(r < 1.0 - opts.ratio_tol)) all_down = false;
    if (std::abs(r - 1.0) > opts.ratio_tol) all_flat = false;
  }

  if (all_flat) {
    est.trend = MassTrend::Converged;
  } else if (all_up) {
    est.trend = MassTrend::GrowingUnbounded;
    est.value = std::numeric_limits<double>::infinity();
  } else if (all_down) {
    est.trend = MassTrend::VanishingToZero;
    est.value = 0.0;
  } else {
    est.trend = MassTrend::Inconclusive;
  }
  return est;
}

double varsigma_dimension(const CantorParams& family, double v, double w,
                          double tol, const MassOptions& opts) {
  double lo = 0.02, hi = 1.0;

  const MassTrend tlo = mass(family, v, w, lo, opts).trend;
  const MassTrend thi = mass(family, v, w, hi, opts).trend;
  if (tlo == MassTrend::Converged) return lo;
  if (thi == MassTrend::Converged) return hi;
  if (tlo != MassTrend::GrowingUnbounded || thi != MassTrend::VanishingToZero) {
    throw NonConvergenceError(
        "varsigma_dimension: trend classification failed to bracket the "
        "critical order on [" + std::to_string(v) + ", " + std::to_string(w) + "]");
  }

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    switch (mass(family, v, w, mid, opts).trend) {
      case MassTrend::GrowingUnbounded: lo = mid; break;
      case MassTrend::VanishingToZero: hi = mid; break;
      default: return mid;  // flat or wobbling: mid sits at the critical order
    }
  }
  return 0.5 * (lo + hi);
}

double convention_scale(Convention convention, double zeta) {
  const double g = std::tgamma(1.0 + zeta);
  switch (convention) {
    case Convention::InverseGamma: return 1.0 / g;
    case Convention::GammaScaled: return g;
    case Convention::Unit: return 1.0;
  }
  return 1.0;
}

StaircaseEvaluator::StaircaseEvaluator(CantorParams params,
                                       Convention convention, double tolerance)
    : StaircaseEvaluator(params, hausdorff_dimension(params.xi), convention,
                         tolerance) {}

StaircaseEvaluator::StaircaseEvaluator(CantorParams params, double zeta,
                                       Convention convention, double tolerance)
    : params_(params),
      zeta_(zeta),
      convention_(convention),
      tolerance_(tolerance) {
  params_.validate();
  check_order(zeta_);
  if (!(tolerance_ > 0.0) || tolerance_ >= 1.0)
    throw std::invalid_argument("StaircaseEvaluator: tolerance must lie in (0,1)");
  total_ = convention_scale(convention_, zeta_);
}

StaircaseEvaluator StaircaseEvaluator::identity(double zeta,
                                                Convention convention,
                                                double tolerance) {
  StaircaseEvaluator ev;
  ev.zeta_ = zeta;
  ev.convention_ = convention;
  ev.tolerance_ = tolerance;
  ev.identity_ = true;
  ev.total_ = convention_scale(convention, zeta);
  return ev;
}

double StaircaseEvaluator::normalized(double x) const {
  if (identity_) return std::clamp(x, 0.0, 1.0);

  double l = 0.0, r = 1.0;
  double acc = 0.0, share = 1.0;
  int step = 1;
  while (share >= tolerance_) {
    if (x <= l) return acc;
    if (x >= r) return acc + share;
    const double len = r - l;
    const double gap = removal_length(params_, len, step);
    if (gap >= len) {
      // Absolute-mode construction exhausted: the remaining piece is an
      // interval carrying its mass share uniformly.
      return acc + share * (x - l) / len;
    }
    const double half = 0.5 * (len - gap);
    const double lm = l + half;
    const double rm = r - half;
    if (x <= lm) {
      r = lm;
    } else if (x >= rm) {
      l = rm;
      acc += 0.5 * share;
    } else {
      return acc + 0.5 * share;  // inside the removed gap: exact plateau
    }
    share *= 0.5;
    ++step;
  }
  return acc + 0.5 * share;
}

double StaircaseEvaluator::normalized_inverse(double u) const {
  if (identity_) return std::clamp(u, 0.0, 1.0);

  double l = 0.0, r = 1.0;
  double base = 0.0, share = 1.0;
  int step = 1;
  while (share >= tolerance_) {
    if (u <= base) return l;
    if (u >= base + share) return r;
    const double len = r - l;
    const double gap = removal_length(params_, len, step);
    if (gap >= len) return l + (u - base) / share * len;
    const double half = 0.5 * (len - gap);
    const double mid = base + 0.5 * share;
    if (u == mid) return l + half;  // plateau value: smallest preimage
    if (u < mid) {
      r = l + half;
    } else {
      l = r - half;
      base = mid;
    }
    share *= 0.5;
    ++step;
  }
  return l;
}

double StaircaseEvaluator::operator()(double x) const {
  if (x < -1e-9 || x > 1.0 + 1e-9)
    throw std::domain_error("StaircaseEvaluator: x outside [0,1]; use extended()");
  return total_ * normalized(std::clamp(x, 0.0, 1.0));
}

double StaircaseEvaluator::inverse(double u) const {
  const double slack = 1e-9 * std::max(1.0, total_);
  if (u < -slack || u > total_ + slack)
    throw std::domain_error("StaircaseEvaluator::inverse: u outside [0, S(1)]");
  return normalized_inverse(std::clamp(u / total_, 0.0, 1.0));
}

double StaircaseEvaluator::extended(double x) const {
  const double n = std::floor(x);
  const double frac = x - n;
  double s = n * total_;
  if (frac > 0.0) s += total_ * normalized(std::min(frac, 1.0));
  return s;
}

double StaircaseEvaluator::extended_inverse(double u) const {
  const double hat = u / total_;
  const double n = std::floor(hat);
  const double rem = hat - n;
  double x = n;
  if (rem > 0.0) x += normalized_inverse(std::min(rem, 1.0));
  return x;
}

}  // namespace cantorcalc
