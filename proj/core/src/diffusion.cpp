#include "cantorcalc/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace cantorcalc {

namespace {

constexpr double kOrderMatchTol = 1e-12;

StaircaseEvaluator order_staircase(double order, Convention conv, double tol) {
  if (order >= 1.0 - kOrderMatchTol)
    return StaircaseEvaluator::identity(1.0, conv, tol);
  CantorParams p{xi_for_dimension(order), RemovalMode::Proportional, 0};
  return StaircaseEvaluator(p, order, conv, tol);
}

// Deterministic standard normal: Marsaglia polar on a mt19937_64 stream
// keyed by (seed, path). Implementation-defined library distributions are
// avoided so equal seeds give equal paths on any platform.
class NormalSampler {
 public:
  NormalSampler(std::uint64_t seed, std::uint64_t path) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
    engine_.seed(seq);
  }

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double a, b, s;
    do {
      a = 2.0 * uniform() - 1.0;
      b = 2.0 * uniform() - 1.0;
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * m;
    has_spare_ = true;
    return a * m;
  }

 private:
  double uniform() {  // [0,1) with 53 random bits
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct LogLogFit {
  double slope = 0.0;
  double stderr_slope = 0.0;
};

LogLogFit fit_loglog(const std::vector<double>& t, const std::vector<double>& y) {
  LogLogFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t n = lx.size();
  if (n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  if (n > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ly[i] - my - fit.slope * (lx[i] - mx);
      ss += r * r;
    }
    fit.stderr_slope = std::sqrt(ss / (static_cast<double>(n) - 2.0) / sxx);
  }
  return fit;
}

}  // namespace

const char* regime_name(DiffusionRegime regime) {
  switch (regime) {
    case DiffusionRegime::Super: return "super";
    case DiffusionRegime::Normal: return "normal";
    case DiffusionRegime::Sub: return "sub";
  }
  return "?";
}

DiffusionRegime classify(double zeta, double beta) {
  if (!(zeta > 0.0 && zeta <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("classify: orders must lie in (0,1]");
  if (std::abs(zeta - beta) <= kOrderMatchTol) return DiffusionRegime::Normal;
  return zeta < beta ? DiffusionRegime::Super : DiffusionRegime::Sub;
}

void DiffusionParams::validate() const {
  if (!(zeta > 0.0 && zeta <= 1.0))
    throw std::domain_error("DiffusionParams: zeta must lie in (0,1]");
  if (!(beta > 0.0 && beta <= 1.0))
    throw std::domain_error("DiffusionParams: beta must lie in (0,1]");
  if (!(coefficient > 0.0))
    throw std::domain_error("DiffusionParams: coefficient must be positive");
  switch (regime) {
    case DiffusionRegime::Normal:
      if (std::abs(zeta - beta) > kOrderMatchTol)
        throw std::invalid_argument(
            "DiffusionParams: Normal regime forces beta == zeta");
      break;
    case DiffusionRegime::Super:
      if (!(zeta < beta - kOrderMatchTol))
        throw std::invalid_argument(
            "DiffusionParams: Super regime needs zeta < beta");
      break;
    case DiffusionRegime::Sub:
      // beta == zeta is the degenerate case that reproduces Normal
      if (zeta < beta - kOrderMatchTol)
        throw std::invalid_argument(
            "DiffusionParams: Sub regime needs zeta >= beta");
      break;
  }
}

namespace {
DiffusionParams validated(DiffusionParams p) {
  p.validate();
  return p;
}
}  // namespace

DiffusionModel::DiffusionModel(DiffusionParams params, Convention convention,
                               double tolerance)
    : params_(validated(params)),
      space_(order_staircase(params_.zeta, convention, tolerance)) {
  if (params_.regime != DiffusionRegime::Super)
    time_ = order_staircase(params_.beta, convention, tolerance);
}

const StaircaseEvaluator& DiffusionModel::time_staircase() const {
  if (!time_)
    throw std::logic_error("DiffusionModel: the Super regime runs on ordinary time");
  return *time_;
}

double DiffusionModel::clock(double t) const {
  if (!(t > 0.0)) throw std::domain_error("DiffusionModel: need t > 0");
  return time_ ? time_->extended(t) : t;
}

double DiffusionModel::kernel(double u, double tau) const {
  const double c = params_.coefficient;
  return std::exp(-u * u / (4.0 * c * tau)) /
         std::sqrt(4.0 * std::numbers::pi * c * tau);
}

double DiffusionModel::propagator(double x, double t) const {
  return kernel(space_.extended(x), clock(t));
}

std::vector<PropagatorSample> DiffusionModel::snapshot(
    const std::vector<double>& xs, double t) const {
  const double tau = clock(t);
  std::vector<PropagatorSample> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back({x, t, kernel(space_.extended(x), tau)});
  return out;
}

double DiffusionModel::propagator_bound(double x, double t) const {
  if (!(t > 0.0)) throw std::domain_error("DiffusionModel: need t > 0");
  const double c = params_.coefficient;
  double tpow = t;
  switch (params_.regime) {
    case DiffusionRegime::Super: tpow = t; break;
    case DiffusionRegime::Normal: tpow = std::pow(t, params_.zeta); break;
    case DiffusionRegime::Sub: tpow = std::pow(t, params_.beta); break;
  }
  const double s_bound = std::pow(std::abs(x), params_.zeta);
  return std::exp(-s_bound * s_bound / (4.0 * c * tpow)) /
         std::sqrt(4.0 * std::numbers::pi * c * tpow);
}

MsdPoint DiffusionModel::msd(double t) const {
  const double tau = clock(t);
  const double c = params_.coefficient;

  MsdPoint out;
  out.msd_s_closed_form = 4.0 * c * tau;
  switch (params_.regime) {
    case DiffusionRegime::Super:
      out.bound_exponent = 1.0 / params_.zeta;
      break;
    case DiffusionRegime::Normal:
      out.bound_exponent = 1.0;
      break;
    case DiffusionRegime::Sub:
      out.bound_exponent = params_.beta / params_.zeta;
      break;
  }
  out.msd_x_bound = 4.0 * c * std::pow(t, out.bound_exponent);

  // int u^2 W(u) du by composite Simpson on [0, 12 sigma], doubled.
  const double sigma = std::sqrt(2.0 * c * tau);
  const double hi = 12.0 * sigma;
  double prev = 0.0;
  for (int cells = 512; cells <= 1 << 16; cells *= 2) {
    const double h = hi / cells;
    double sum = 0.0 + hi * hi * kernel(hi, tau);
    for (int i = 1; i < cells; ++i) {
      const double u = i * h;
      sum += (i % 2 ? 4.0 : 2.0) * u * u * kernel(u, tau);
    }
    const double cur = 2.0 * sum * h / 3.0;
    if (cells > 512 && std::abs(cur - prev) <= 1e-9 * std::max(1.0, cur)) {
      out.msd_s_quadrature = cur;
      return out;
    }
    prev = cur;
  }
  throw NonConvergenceError("msd: second-moment quadrature did not settle");
}

double DiffusionModel::normalization(double t, double tol) const {
  const double tau = clock(t);
  const double c = params_.coefficient;
  const double sigma = std::sqrt(2.0 * c * tau);
  const double range = 10.0 * sigma;
  const double total = space_.total();

  // Midpoint Stieltjes sum over the surviving intervals of each unit cell:
  // the midpoint of a construction interval carries exactly half its mass,
  // so this is the midpoint rule in the S coordinate with spacing S(1)/2^d.
  const long first_cell = static_cast<long>(std::floor(-range / total));
  const long last_cell = static_cast<long>(std::ceil(range / total));

  double prev = 0.0;
  for (int depth = 8; depth <= 16; depth += 2) {
    double sum = 0.0;
    const double du = std::ldexp(total, -depth);
    if (space_.is_identity()) {
      // uniform cells over the whole window
      const long n = (last_cell - first_cell) << depth;
      for (long i = 0; i < n; ++i) {
        const double x =
            static_cast<double>(first_cell) + (i + 0.5) * std::ldexp(1.0, -depth);
        sum += propagator(x, t) * du;
      }
    } else {
      CantorParams p = space_.params();
      p.depth = depth;
      const PreFractal base = build_prefractal(p);
      for (long cell = first_cell; cell < last_cell; ++cell) {
        for (const Interval& iv : base.intervals()) {
          const double x = static_cast<double>(cell) + 0.5 * (iv.left + iv.right);
          sum += propagator(x, t) * du;
        }
      }
    }
    if (depth > 8 && std::abs(sum - prev) <= tol) return sum;
    prev = sum;
  }
  throw NonConvergenceError("normalization: Stieltjes quadrature did not settle");
}

void WalkConfig::validate() const {
  if (n_paths < 1) throw std::invalid_argument("WalkConfig: need n_paths >= 1");
  if (n_steps < 1) throw std::invalid_argument("WalkConfig: need n_steps >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("WalkConfig: need dt > 0");
  if (n_samples < 1) throw std::invalid_argument("WalkConfig: need n_samples >= 1");
  if (!(t_min_factor > 0.0 && t_min_factor <= 1.0))
    throw std::invalid_argument("WalkConfig: t_min_factor must lie in (0,1]");
  if (horizon() * t_min_factor < dt)
    throw std::invalid_argument(
        "WalkConfig: dt " + std::to_string(dt) +
        " cannot resolve the smallest requested time " +
        std::to_string(horizon() * t_min_factor));
}

MsdSeries simulate_walk(const DiffusionModel& model, const WalkConfig& config) {
  config.validate();
  const double c = model.params().coefficient;
  const double horizon = config.horizon();

  // log-spaced sample times snapped to step boundaries
  std::vector<std::size_t> sample_steps;
  {
    const double t0 = horizon * config.t_min_factor;
    for (std::size_t j = 0; j < config.n_samples; ++j) {
      const double frac = config.n_samples == 1
                              ? 1.0
                              : static_cast<double>(j) /
                                    static_cast<double>(config.n_samples - 1);
      const double tj = t0 * std::pow(horizon / t0, frac);
      const auto step = static_cast<std::size_t>(std::llround(tj / config.dt));
      sample_steps.push_back(std::clamp<std::size_t>(step, 1, config.n_steps));
    }
    std::sort(sample_steps.begin(), sample_steps.end());
    sample_steps.erase(std::unique(sample_steps.begin(), sample_steps.end()),
                       sample_steps.end());
  }

  // clock increments are path-independent: precompute per step
  std::vector<double> dtau(config.n_steps);
  {
    double prev = 0.0;
    for (std::size_t n = 1; n <= config.n_steps; ++n) {
      const double cur = model.clock(static_cast<double>(n) * config.dt);
      dtau[n - 1] = std::max(cur - prev, 0.0);
      prev = cur;
    }
  }

  const std::size_t m = sample_steps.size();
  std::vector<double> sum_u2(m, 0.0), sum_x2(m, 0.0);

  for (std::size_t path = 0; path < config.n_paths; ++path) {
    NormalSampler normal(config.seed, path);
    double u = 0.0;
    std::size_t next = 0;
    for (std::size_t n = 1; n <= config.n_steps && next < m; ++n) {
      u += std::sqrt(2.0 * c * dtau[n - 1]) * normal();
      while (next < m && sample_steps[next] == n) {
        sum_u2[next] += u * u;
        const double x = model.space().extended_inverse(u);
        sum_x2[next] += x * x;
        ++next;
      }
    }
  }

  MsdSeries out;
  out.times.reserve(m);
  out.msd_s.reserve(m);
  out.msd_x.reserve(m);
  const double inv_n = 1.0 / static_cast<double>(config.n_paths);
  for (std::size_t j = 0; j < m; ++j) {
    out.times.push_back(static_cast<double>(sample_steps[j]) * config.dt);
    out.msd_s.push_back(sum_u2[j] * inv_n);
    out.msd_x.push_back(sum_x2[j] * inv_n);
  }

  const LogLogFit fx = fit_loglog(out.times, out.msd_x);
  out.fitted_exponent = fx.slope;
  out.fitted_exponent_stderr = fx.stderr_slope;
  out.fitted_exponent_s = fit_loglog(out.times, out.msd_s).slope;
  return out;
}

double walk_coefficient_hint(const DiffusionModel& model, double horizon) {
  const double s1 = model.space().total();
  const double target_rms = s1 / 6.0;
  return target_rms * target_rms / (2.0 * model.clock(horizon));
}

}  // namespace cantorcalc
