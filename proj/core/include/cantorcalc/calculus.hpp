#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cantorcalc/set.hpp"
#include "cantorcalc/staircase.hpp"

namespace cantorcalc {

/// Function known only at the 2^(k+1) interval endpoints of a pre-fractal.
struct GridFunction {
  PreFractal support;
  std::vector<double> points;  // flattened sorted endpoints
  std::vector<double> values;

  void validate() const;
};

GridFunction sample_on_prefractal(PreFractal set,
                                  const std::function<double(double)>& f);

/// f(x) = g(S(x)) given through its conjugate g on [0, S(1)].
/// dg and antiderivative are optional closed forms.
struct ConjugateFunction {
  std::function<double(double)> g;
  std::function<double(double)> dg;
  std::function<double(double)> antiderivative;

  double operator()(const StaircaseEvaluator& ev, double x) const {
    return g(ev.extended(x));
  }

  /// Largest |dg(u) - finite difference| on a probe grid over [0, hi].
  double derivative_consistency(double hi, int probes = 256) const;
};

/// Indicator of the depth-k approximation.
double characteristic(const PreFractal& set, double x);

/// Conjugacy rule: g'(S(x)) on the set, 0 elsewhere. Requires dg.
double conjugate_derivative(const ConjugateFunction& f,
                            const StaircaseEvaluator& ev,
                            const PreFractal& set, double x);

/// Difference quotient over the sampled cell containing x: the two
/// endpoints of the depth-k interval around x are the nearest grid points
/// with distinct staircase values. Returns 0 off the set and NaN when the
/// staircase increment falls under the evaluator tolerance.
double grid_derivative(const GridFunction& f, const StaircaseEvaluator& ev,
                       double x);

enum class EnvelopeKind { Sup, Inf };

/// Per-cell envelope of the sampled values: Sup or Inf over the samples in
/// each closed cell of q (falling back to the endpoints of the surviving
/// interval that contains the cell), 0 on cells whose interior misses the
/// set. One value per cell, q.points.size() - 1 in total.
std::vector<double> cell_envelopes(const GridFunction& f, const Subdivision& q,
                                   EnvelopeKind kind);

/// Darboux sums with cell weights S(y_j) - S(y_{j-1}) and cell_envelopes
/// factors.
double upper_sum(const GridFunction& f, const Subdivision& q,
                 const StaircaseEvaluator& ev);
double lower_sum(const GridFunction& f, const Subdivision& q,
                 const StaircaseEvaluator& ev);

class NonIntegrableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrand sampled on the set; receives the position x and the
/// convention-scaled staircase value S(x).
using SetIntegrand = std::function<double(double x, double s)>;

struct IntegrateOptions {
  double tolerance = 1e-3;  // stop once upper - lower < tolerance
  int initial_depth = 6;
  int max_depth = 24;      // working-depth budget of the refinement ladder
  int probe_levels = 6;    // envelope sampling this many levels below
  int max_grid_depth = 20; // cap on materialized endpoints (2^(d+1) doubles)
};

struct IntegrationResult {
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;
  bool converged = false;
};

/// Darboux ladder over construction-aligned subdivisions of [v,w],
/// deepening until upper - lower < tolerance. Throws NonIntegrableError
/// when the bracket stalls above tolerance within the depth budget.
IntegrationResult integrate(const CantorParams& family,
                            const StaircaseEvaluator& ev, const SetIntegrand& f,
                            double v, double w,
                            const IntegrateOptions& opts = {});

/// Exact conjugacy route: G(S(w)) - G(S(v)), with G the antiderivative of
/// g (numerical quadrature of g in the S variable when no closed form is
/// supplied).
double integrate_conjugate(const ConjugateFunction& f,
                           const StaircaseEvaluator& ev, double v, double w);

enum class FtcPath { Conjugate, Grid };

/// | integral of the derivative over [v,w]  -  (f(w) - f(v)) |.
/// The Conjugate path integrates dg by ordinary quadrature in the S
/// variable; the Grid path runs the Darboux ladder on g'(S(x)).
double ftc_residual(const ConjugateFunction& f, const CantorParams& family,
                    const StaircaseEvaluator& ev, double v, double w,
                    FtcPath path, const IntegrateOptions& opts = {});

/// Worked examples used by the CLI and the verification suite.
struct CalculusExample {
  const char* name;
  CantorParams set;
  double zeta;
  ConjugateFunction fn;
};

/// sin(2*pi*Gamma(1+zeta)*u) on the triadic set, zeta = dim(1/3): one full
/// period of the conjugate sine across [0, S(1)] under the InverseGamma
/// convention, so the integral over [0,1] closes to zero.
CalculusExample sine_example();

/// u^2 on the xi = 1/5 set at order 0.86 (the order the figure-class
/// results quote for this set): integral (1/3) S(1)^3.
CalculusExample square_example();

}  // namespace cantorcalc
