#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantorcalc/staircase.hpp"

namespace cantorcalc {

enum class DiffusionRegime { Super, Normal, Sub };

const char* regime_name(DiffusionRegime regime);

/// Super iff zeta < beta, Normal iff zeta == beta (within 1e-12), Sub
/// otherwise; equivalent to comparing the displacement exponent beta/zeta
/// against 1.
DiffusionRegime classify(double zeta, double beta);

/// regime Super:  coefficient K, units Length^(2 zeta) / Time
/// regime Normal: coefficient G, units Length^(2 zeta) / Time^zeta (beta = zeta)
/// regime Sub:    coefficient L, units Length^(2 zeta) / Time^beta
struct DiffusionParams {
  DiffusionRegime regime = DiffusionRegime::Super;
  double zeta = 1.0;
  double beta = 1.0;
  double coefficient = 1.0;

  void validate() const;
};

struct MsdPoint {
  double msd_s_quadrature = 0.0;   // second moment in the S coordinate (trusted)
  double msd_s_closed_form = 0.0;  // the printed law 4*coef*clock(t)
  double msd_x_bound = 0.0;        // 4K t^(1/zeta) | 4G t | 4L t^(beta/zeta)
  double bound_exponent = 0.0;     // 1/zeta | 1 | beta/zeta
};

/// One propagator evaluation: density w at position x and time t, taken
/// against the fractal measure dS. w >= 0 and finite for every t > 0.
struct PropagatorSample {
  double x = 0.0;
  double t = 0.0;
  double w = 0.0;
};

struct MsdSeries {
  std::vector<double> times;
  std::vector<double> msd_s;  // ensemble <S(x)^2>
  std::vector<double> msd_x;  // ensemble <x^2>
  double fitted_exponent = 0.0;  // log-log least squares slope of msd_x vs t
  double fitted_exponent_stderr = 0.0;
  double fitted_exponent_s = 0.0;  // same fit for msd_s (diagnostic)
};

/// Propagators and displacement laws for diffusion on middle-xi Cantor
/// sets. The space staircase has order zeta on the set of dimension zeta;
/// the Normal and Sub clocks run on the time staircase of order beta (the
/// set of dimension beta), which for Normal is the same set as space.
/// Order 1 degenerates to the identity staircase. Immutable; evaluation is
/// thread-safe.
class DiffusionModel {
 public:
  explicit DiffusionModel(DiffusionParams params,
                          Convention convention = Convention::InverseGamma,
                          double tolerance = 1e-10);

  const DiffusionParams& params() const { return params_; }
  const StaircaseEvaluator& space() const { return space_; }
  const StaircaseEvaluator& time_staircase() const;  // throws for Super

  /// Walker clock: t (Super), S(t) of order zeta (Normal), or S(t) of
  /// order beta (Sub).
  double clock(double t) const;

  /// W(x,t) = clock^(-1/2) / sqrt(4 pi c) * exp(-S(x)^2 / (4 c clock)),
  /// a density against the fractal measure dS on the extended line.
  double propagator(double x, double t) const;

  /// The surrogate bound forms with S(x) -> |x|^zeta and S(t) -> t^zeta
  /// or t^beta; not a normalized density.
  double propagator_bound(double x, double t) const;

  /// Snapshot of the propagator over a position grid at one time.
  std::vector<PropagatorSample> snapshot(const std::vector<double>& xs,
                                         double t) const;

  /// Second moment of the propagator in the S coordinate by quadrature,
  /// next to the printed closed form and the displacement bound.
  MsdPoint msd(double t) const;

  /// Stieltjes quadrature of W(x,t) against dS over the extended line via
  /// midpoint sums on construction cells; refined until stable. Should be
  /// 1 for every regime and t > 0.
  double normalization(double t, double tol = 1e-8) const;

 private:
  double kernel(double u, double tau) const;

  DiffusionParams params_;
  StaircaseEvaluator space_;
  std::optional<StaircaseEvaluator> time_;
};

struct WalkConfig {
  std::size_t n_paths = 10000;
  std::size_t n_steps = 4096;
  double dt = 1.0 / 4096;
  std::uint64_t seed = 0;
  std::size_t n_samples = 16;   // log-spaced sampling times
  double t_min_factor = 0.01;   // first sample at horizon * factor

  double horizon() const { return static_cast<double>(n_steps) * dt; }
  void validate() const;
};

/// Ensemble of independent Brownian walks in the S coordinate with the
/// regime clock, mapped back through the staircase inverse. Deterministic
/// per (seed, path index); paths use Marsaglia polar normals on
/// mt19937_64 streams. Throws when dt cannot resolve the first sample.
MsdSeries simulate_walk(const DiffusionModel& model, const WalkConfig& config);

/// Coefficient that keeps the walk inside the self-similar scaling window:
/// RMS of the S coordinate at the horizon equals S(1)/6.
double walk_coefficient_hint(const DiffusionModel& model, double horizon);

}  // namespace cantorcalc
