#include "cantorcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace cantorcalc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double simpson(const std::function<double(double)>& fn, double a, double b,
               int cells) {
  const double h = (b - a) / cells;
  double sum = fn(a) + fn(b);
  for (int i = 1; i < cells; ++i) sum += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
  return sum * h / 3.0;
}

// Composite Simpson with interval doubling until two rounds agree.
double quadrature(const std::function<double(double)>& fn, double a, double b,
                  double tol) {
  if (a == b) return 0.0;
  double prev = simpson(fn, a, b, 64);
  for (int cells = 128; cells <= 1 << 20; cells *= 2) {
    const double cur = simpson(fn, a, b, cells);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw NonConvergenceError("quadrature: Simpson refinement did not settle");
}

struct DarbouxBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = true;
};

// Per-level interval and gap lengths of the construction; throws like the
// builder when an absolute-mode removal no longer fits.
std::vector<double> level_lengths(const CantorParams& family, int depth) {
  std::vector<double> len(static_cast<std::size_t>(depth) + 1);
  len[0] = 1.0;
  CantorParams p = family;
  for (int j = 1; j <= depth; ++j) {
    const double gap = removal_length(p, len[j - 1], j);
    if (gap >= len[j - 1])
      throw std::domain_error(
          "removal length exceeds the surviving interval at step " +
          std::to_string(j) + " (degenerate absolute-mode construction)");
    len[j] = 0.5 * (len[j - 1] - gap);
  }
  return len;
}

// Darboux sums over the construction-aligned subdivision of [v,w] at
// work_depth, with envelopes sampled at the grid_depth endpoints. The grid
// is walked in order without being materialized; staircase values at
// aligned endpoints are exact dyadic shares of S(1) and only cells clipped
// by v or w fall back to the evaluator descent.
class AlignedDarboux {
 public:
  AlignedDarboux(const CantorParams& family, const StaircaseEvaluator& ev,
                 const SetIntegrand& f, double v, double w, int work_depth,
                 int grid_depth)
      : ev_(ev),
        f_(f),
        v_(v),
        w_(w),
        grid_depth_(grid_depth),
        group_(std::size_t{1} << (grid_depth - work_depth)),
        lengths_(level_lengths(family, grid_depth)),
        grid_mass_(std::ldexp(ev.total(), -grid_depth)),
        cell_mass_(std::ldexp(ev.total(), -work_depth)) {}

  DarbouxBracket run() {
    walk(0.0, 1.0, 0, 0);
    flush();
    return out_;
  }

 private:
  void walk(double l, double r, int level, std::size_t index) {
    if (r <= v_ || l >= w_) return;
    if (level == grid_depth_) {
      leaf(l, r, index);
      return;
    }
    const double child = lengths_[static_cast<std::size_t>(level) + 1];
    walk(l, l + child, level + 1, index * 2);
    walk(r - child, r, level + 1, index * 2 + 1);
  }

  void leaf(double l, double r, std::size_t j) {
    const std::size_t cell = j / group_;
    if (cell != open_cell_) {
      flush();
      open_cell_ = cell;
      cell_first_ = cell_last_ = j;
      first_left_ = l;
      cmin_ = std::numeric_limits<double>::infinity();
      cmax_ = -cmin_;
    }
    cell_last_ = j;
    last_right_ = r;

    const double xl = std::max(l, v_);
    const double xr = std::min(r, w_);
    const double sl = (xl == l) ? grid_mass_ * static_cast<double>(j) : ev_(xl);
    const double sr =
        (xr == r) ? grid_mass_ * static_cast<double>(j + 1) : ev_(xr);
    const double fl = f_(xl, sl);
    const double fr = f_(xr, sr);
    cmin_ = std::min({cmin_, fl, fr});
    cmax_ = std::max({cmax_, fl, fr});
  }

  void flush() {
    if (open_cell_ == kNoCell) return;
    const bool whole = cell_first_ == open_cell_ * group_ &&
                       cell_last_ == open_cell_ * group_ + group_ - 1 &&
                       first_left_ >= v_ && last_right_ <= w_;
    const double ds = whole ? cell_mass_
                            : ev_(std::min(last_right_, w_)) -
                                  ev_(std::max(first_left_, v_));
    out_.lower += cmin_ * ds;
    out_.upper += cmax_ * ds;
    out_.empty = false;
    open_cell_ = kNoCell;
  }

  static constexpr std::size_t kNoCell = static_cast<std::size_t>(-1);

  const StaircaseEvaluator& ev_;
  const SetIntegrand& f_;
  double v_, w_;
  int grid_depth_;
  std::size_t group_;
  std::vector<double> lengths_;
  double grid_mass_, cell_mass_;

  std::size_t open_cell_ = kNoCell;
  std::size_t cell_first_ = 0, cell_last_ = 0;
  double first_left_ = 0.0, last_right_ = 0.0;
  double cmin_ = 0.0, cmax_ = 0.0;
  DarbouxBracket out_;
};

DarbouxBracket darboux_aligned(const CantorParams& family,
                               const StaircaseEvaluator& ev,
                               const SetIntegrand& f, double v, double w,
                               int work_depth, int grid_depth) {
  return AlignedDarboux(family, ev, f, v, w, work_depth, grid_depth).run();
}

}  // namespace

void GridFunction::validate() const {
  const std::size_t n = support.intervals().size() * 2;
  if (points.size() != n || values.size() != n)
    throw std::invalid_argument("GridFunction: points/values must list every "
                                "interval endpoint of the support");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] < points[i - 1])
      throw std::invalid_argument("GridFunction: points must be sorted");
  for (double val : values)
    if (!std::isfinite(val))
      throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction sample_on_prefractal(PreFractal set,
                                  const std::function<double(double)>& f) {
  GridFunction out;
  out.points.reserve(set.intervals().size() * 2);
  out.values.reserve(set.intervals().size() * 2);
  for (const Interval& iv : set.intervals()) {
    out.points.push_back(iv.left);
    out.points.push_back(iv.right);
    out.values.push_back(f(iv.left));
    out.values.push_back(f(iv.right));
  }
  out.support = std::move(set);
  return out;
}

double ConjugateFunction::derivative_consistency(double hi, int probes) const {
  if (!dg) throw std::invalid_argument("ConjugateFunction: dg not supplied");
  const double h = std::max(hi, 1.0) * 1e-6;
  double worst = 0.0;
  for (int i = 0; i <= probes; ++i) {
    const double u = hi * static_cast<double>(i) / probes;
    const double fd = (g(u + h) - g(u - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - dg(u)));
  }
  return worst;
}

double characteristic(const PreFractal& set, double x) {
  return set.contains(x) ? 1.0 : 0.0;
}

double conjugate_derivative(const ConjugateFunction& f,
                            const StaircaseEvaluator& ev,
                            const PreFractal& set, double x) {
  if (!f.dg) throw std::invalid_argument("conjugate_derivative: dg not supplied");
  if (!set.contains(x)) return 0.0;
  return f.dg(ev.extended(x));
}

double grid_derivative(const GridFunction& f, const StaircaseEvaluator& ev,
                       double x) {
  const auto ivs = f.support.intervals();
  auto it = std::lower_bound(
      ivs.begin(), ivs.end(), x,
      [](const Interval& iv, double v) { return iv.right < v; });
  if (it == ivs.end() || it->left > x) return 0.0;  // off the set

  const std::size_t i = static_cast<std::size_t>(it - ivs.begin());
  const double ds = std::ldexp(ev.total(), -f.support.depth());
  if (ds < ev.tolerance() * std::max(1.0, ev.total())) return kNan;
  return (f.values[2 * i + 1] - f.values[2 * i]) / ds;
}

namespace {

double envelope_over_cell(const GridFunction& f, double a, double b, bool sup) {
  auto lo = std::lower_bound(f.points.begin(), f.points.end(), a);
  auto hi = std::upper_bound(f.points.begin(), f.points.end(), b);
  if (lo != hi) {
    double env = sup ? -std::numeric_limits<double>::infinity()
                     : std::numeric_limits<double>::infinity();
    for (auto it = lo; it != hi; ++it) {
      const double val = f.values[static_cast<std::size_t>(it - f.points.begin())];
      env = sup ? std::max(env, val) : std::min(env, val);
    }
    return env;
  }
  // cell sits strictly inside one surviving interval: the nearest sampled
  // values are that interval's endpoints
  const auto ivs = f.support.intervals();
  auto it = std::lower_bound(
      ivs.begin(), ivs.end(), a,
      [](const Interval& iv, double v) { return iv.right < v; });
  const std::size_t j = static_cast<std::size_t>(it - ivs.begin());
  return sup ? std::max(f.values[2 * j], f.values[2 * j + 1])
             : std::min(f.values[2 * j], f.values[2 * j + 1]);
}

double darboux_sum(const GridFunction& f, const Subdivision& q,
                   const StaircaseEvaluator& ev, bool sup) {
  f.validate();
  q.validate();
  double sum = 0.0;
  double s_prev = ev(q.points.front());
  for (std::size_t i = 1; i < q.points.size(); ++i) {
    const double a = q.points[i - 1];
    const double b = q.points[i];
    const double s_cur = ev(b);
    const double ds = s_cur - s_prev;
    s_prev = s_cur;
    if (!f.support.flag({a, b})) continue;  // envelope is 0 off the set
    sum += envelope_over_cell(f, a, b, sup) * ds;
  }
  return sum;
}

}  // namespace

std::vector<double> cell_envelopes(const GridFunction& f, const Subdivision& q,
                                   EnvelopeKind kind) {
  f.validate();
  q.validate();
  std::vector<double> out;
  out.reserve(q.points.size() - 1);
  for (std::size_t i = 1; i < q.points.size(); ++i) {
    const double a = q.points[i - 1];
    const double b = q.points[i];
    out.push_back(f.support.flag({a, b})
                      ? envelope_over_cell(f, a, b, kind == EnvelopeKind::Sup)
                      : 0.0);
  }
  return out;
}

double upper_sum(const GridFunction& f, const Subdivision& q,
                 const StaircaseEvaluator& ev) {
  return darboux_sum(f, q, ev, true);
}

double lower_sum(const GridFunction& f, const Subdivision& q,
                 const StaircaseEvaluator& ev) {
  return darboux_sum(f, q, ev, false);
}

IntegrationResult integrate(const CantorParams& family,
                            const StaircaseEvaluator& ev, const SetIntegrand& f,
                            double v, double w, const IntegrateOptions& opts) {
  if (!(0.0 <= v && v < w && w <= 1.0))
    throw std::invalid_argument("integrate: need 0 <= v < w <= 1");

  IntegrationResult res;
  for (int depth = opts.initial_depth; depth <= opts.max_depth; depth += 2) {
    const int grid_depth =
        std::min(depth + opts.probe_levels, std::max(depth, opts.max_grid_depth));
    const DarbouxBracket br =
        darboux_aligned(family, ev, f, v, w, depth, grid_depth);
    res.lower = br.lower;
    res.upper = br.upper;
    res.depth = depth;
    res.value = 0.5 * (br.lower + br.upper);
    if (br.empty || br.upper - br.lower < opts.tolerance) {
      res.converged = true;
      return res;
    }
  }
  throw NonIntegrableError(
      "integrate: upper/lower sums stalled at gap " +
      std::to_string(res.upper - res.lower) + " > tolerance " +
      std::to_string(opts.tolerance) + " at depth " + std::to_string(res.depth));
}

double integrate_conjugate(const ConjugateFunction& f,
                           const StaircaseEvaluator& ev, double v, double w) {
  const double sv = ev(v);
  const double sw = ev(w);
  if (f.antiderivative) return f.antiderivative(sw) - f.antiderivative(sv);
  return quadrature(f.g, sv, sw, 1e-12);
}

double ftc_residual(const ConjugateFunction& f, const CantorParams& family,
                    const StaircaseEvaluator& ev, double v, double w,
                    FtcPath path, const IntegrateOptions& opts) {
  if (!f.dg) throw std::invalid_argument("ftc_residual: dg not supplied");
  const double rhs = f.g(ev(w)) - f.g(ev(v));
  double lhs;
  if (path == FtcPath::Conjugate) {
    lhs = quadrature(f.dg, ev(v), ev(w), 1e-12);
  } else {
    lhs = integrate(family, ev, [&f](double, double s) { return f.dg(s); }, v, w,
                    opts)
              .value;
  }
  return std::abs(lhs - rhs);
}

CalculusExample sine_example() {
  const double zeta = hausdorff_dimension(1.0 / 3.0);
  const double omega = 2.0 * std::numbers::pi * std::tgamma(1.0 + zeta);
  CalculusExample ex;
  ex.name = "ex1";
  ex.set = {1.0 / 3.0, RemovalMode::Proportional, 0};
  ex.zeta = zeta;
  ex.fn.g = [omega](double u) { return std::sin(omega * u); };
  ex.fn.dg = [omega](double u) { return omega * std::cos(omega * u); };
  ex.fn.antiderivative = [omega](double u) { return -std::cos(omega * u) / omega; };
  return ex;
}

CalculusExample square_example() {
  CalculusExample ex;
  ex.name = "ex2";
  ex.set = {1.0 / 5.0, RemovalMode::Proportional, 0};
  ex.zeta = 0.86;
  ex.fn.g = [](double u) { return u * u; };
  ex.fn.dg = [](double u) { return 2.0 * u; };
  ex.fn.antiderivative = [](double u) { return u * u * u / 3.0; };
  return ex;
}

}  // namespace cantorcalc
