#pragma once

#include <stdexcept>
#include <vector>

#include "cantorcalc/set.hpp"

namespace cantorcalc {

/// Thrown when an iterative numerical procedure exhausts its budget
/// without meeting its tolerance.
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subdivision v = y_0 < y_1 < ... < y_n = w of a closed interval.
struct Subdivision {
  std::vector<double> points;

  double mesh() const;  // largest consecutive gap
  void validate() const;
  static Subdivision uniform(double v, double w, int cells);
};

enum class MassTrend { Converged, GrowingUnbounded, VanishingToZero, Inconclusive };

struct MassEstimate {
  double zeta = 0.0;
  double delta = 0.0;
  double value = 0.0;
  int depth_used = 0;
  MassTrend trend = MassTrend::Converged;
};

/// sum over cells of (y_i - y_{i-1})^zeta / Gamma(zeta+1), counting only
/// cells whose interior meets the set.
double rho_sum(const PreFractal& set, const Subdivision& q, double zeta);

/// Upper bound on the coarse-grained mass of C ∩ [v,w] at mesh bound
/// `delta`: minimizes rho_sum over subdivisions built from construction
/// endpoints (depth m = coarsest alignment fitting delta up to the set's
/// own depth) with uniform refinement of any oversized cell. The aligned
/// family attains the self-similar value exactly on [0,1].
MassEstimate coarse_mass(const PreFractal& set, double v, double w,
                         double zeta, double delta);

struct MassOptions {
  int min_depth = 4;
  int max_depth = 16;
  int ratio_window = 5;     // consecutive depths entering the ratio test
  double ratio_tol = 1e-3;  // band around ratio 1 that counts as converged
};

/// Mass function: coarse-grained mass along a depth schedule with a
/// geometric-ratio trend classification. value is the last aligned sum for
/// Converged/Inconclusive, 0 for VanishingToZero, +inf for GrowingUnbounded.
MassEstimate mass(const CantorParams& family, double v, double w, double zeta,
                  const MassOptions& opts = {});

/// Critical order where the mass function drops from +inf to 0, located by
/// bisection on the trend classification; absolute tolerance `tol`.
double varsigma_dimension(const CantorParams& family, double v, double w,
                          double tol = 1e-3, const MassOptions& opts = {});

/// Normalization of the staircase total S(1) for order zeta:
///   InverseGamma: S(1) = 1/Gamma(1+zeta)  (follows the mass definition)
///   GammaScaled:  S(1) = Gamma(1+zeta)
///   Unit:         S(1) = 1
enum class Convention { InverseGamma, GammaScaled, Unit };

double convention_scale(Convention convention, double zeta);

/// Integral staircase function S(x) of a middle-xi Cantor set: cumulative
/// mass of C ∩ [0,x]. Evaluated by descending the construction tree; each
/// level halves the remaining mass share, gaps return exact plateaus, and
/// the descent stops once the share drops below `tolerance` (absolute
/// error <= tolerance * S(1)). Immutable and safe to share across threads.
class StaircaseEvaluator {
 public:
  /// zeta defaults to hausdorff_dimension(params.xi).
  explicit StaircaseEvaluator(CantorParams params,
                              Convention convention = Convention::InverseGamma,
                              double tolerance = 1e-10);
  StaircaseEvaluator(CantorParams params, double zeta,
                     Convention convention = Convention::InverseGamma,
                     double tolerance = 1e-10);

  /// The degenerate xi -> 0 limit where S(x) = x * S(1); used for the
  /// zeta = 1 paths of the diffusion module.
  static StaircaseEvaluator identity(double zeta = 1.0,
                                     Convention convention = Convention::Unit,
                                     double tolerance = 1e-10);

  /// S(x) for x in [0,1].
  double operator()(double x) const;

  /// Smallest x in [0,1] with S(x) >= u, for u in [0, S(1)].
  double inverse(double u) const;

  /// Odd, periodic-increment extension to the real line:
  /// S(x + n) = S(x) + n*S(1) and S(-x) = -S(x).
  double extended(double x) const;

  /// Generalized inverse of the extension.
  double extended_inverse(double u) const;

  double total() const { return total_; }  // S(1)
  double zeta() const { return zeta_; }
  double tolerance() const { return tolerance_; }
  Convention convention() const { return convention_; }
  const CantorParams& params() const { return params_; }
  bool is_identity() const { return identity_; }

 private:
  StaircaseEvaluator() = default;

  double normalized(double x) const;          // S(x)/S(1) on [0,1]
  double normalized_inverse(double u) const;  // inverse of the above

  CantorParams params_;
  double zeta_ = 1.0;
  Convention convention_ = Convention::InverseGamma;
  double tolerance_ = 1e-10;
  double total_ = 1.0;
  bool identity_ = false;
};

}  // namespace cantorcalc
