#include "starkwave/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gauss_rule.hpp"
#include "starkwave/designer.hpp"
#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

void require_increasing(const std::vector<double>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require_finite(xs[i], what);
    if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
  }
}

double interpolate_linear(const smooth::Tabulated& tab, double t) {
  const auto& ts = tab.times;
  auto it = std::upper_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin()) return tab.values.front();
  if (it == ts.end()) return tab.values.back();
  const auto i = static_cast<std::size_t>(it - ts.begin());
  const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
  return tab.values[i - 1] + w * (tab.values[i] - tab.values[i - 1]);
}

std::string describe_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << t;
  return os.str();
}

// ---------------------------------------------------------------------------
// Adaptive Gauss panels.
//
// On [a, b] with f(a) = f_a the increment of F is exp(-i f_a) * dG where
// dG = int_a^b exp(-i (f(x) - f_a)) dx depends only on the panel, so panels
// can be estimated and refined independently of the accumulated phase.

struct PanelSum {
  double df = 0.0;
  std::complex<double> dG{0.0, 0.0};
  double scale_f = 0.0;  // sum |alpha w| for a rounding floor
  double max_alpha = 0.0;
};

struct Increment {
  double df = 0.0;
  std::complex<double> dG{0.0, 0.0};
  double err_f = 0.0;
  double err_F = 0.0;

  void append(const Increment& right) {
    dG += std::polar(1.0, -df) * right.dG;
    df += right.df;
    err_f += right.err_f;
    err_F += right.err_F;
  }
};

class PanelIntegrator {
 public:
  PanelIntegrator(const FieldSpec& spec, QuadratureTolerance tol, double span)
      : spec_(spec), tol_(tol), span_(std::max(span, std::numeric_limits<double>::min())) {}

  Increment integrate(double a, double b) const {
    Increment total;
    if (!(b > a)) return total;
    const double max_width = 0.1;
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double hi = (p + 1 == panels) ? b : a + (p + 1) * h;
      total.append(adapt(lo, hi, rule(lo, hi), 0));
    }
    return total;
  }

 private:
  double alpha(double t) const {
    const double v = alpha_at(spec_, t);
    if (!std::isfinite(v))
      throw QuadratureError("field value is not finite at t = " + describe_time(t) + " (" + spec_.describe() + ")");
    return v;
  }

  PanelSum rule(double a, double b) const {
    const auto& g = detail::Gauss16::instance();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    PanelSum s;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      const double x = mid + half * g.nodes[j];
      const double aj = alpha(x);
      s.df += g.weights[j] * aj;
      s.scale_f += g.weights[j] * std::abs(aj);
      s.max_alpha = std::max(s.max_alpha, std::abs(aj));

      // f(x) - f(a) by the same rule mapped onto [a, x].
      const double h2 = 0.5 * (x - a);
      double inner = 0.0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k) inner += g.weights[k] * alpha(a + h2 * (1.0 + g.nodes[k]));
      inner *= h2;
      s.dG += g.weights[j] * std::polar(1.0, -inner);
    }
    s.df *= half;
    s.scale_f *= half;
    s.dG *= half;
    return s;
  }

  Increment adapt(double a, double b, const PanelSum& whole, int depth) const {
    const double m = 0.5 * (a + b);
    const PanelSum left = rule(a, m);
    const PanelSum right = rule(m, b);

    const double width = b - a;
    const double fine_df = left.df + right.df;
    const std::complex<double> fine_dG = left.dG + std::polar(1.0, -left.df) * right.dG;
    const double err_f = std::abs(whole.df - fine_df);
    const double err_F = std::abs(whole.dG - fine_dG);

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double budget_f = std::max(tol_.f * width / span_, 64.0 * eps * whole.scale_f);
    const double budget_F = std::max(tol_.F * width / span_, 64.0 * eps * width);
    const bool resolved = width * std::max(left.max_alpha, right.max_alpha) <= 1.0;

    if (resolved && err_f <= budget_f && err_F <= budget_F) return {fine_df, fine_dG, err_f, err_F};

    if (depth > 60 || width < 1e-13 * std::max(1.0, std::abs(a)))
      throw QuadratureError("phase quadrature failed to converge near t = " + describe_time(m) +
                            " (panel width " + describe_time(width) + ", field " + spec_.describe() +
                            "); the field is probably not integrable there");

    Increment out = adapt(a, m, left, depth + 1);
    out.append(adapt(m, b, right, depth + 1));
    return out;
  }

  const FieldSpec& spec_;
  QuadratureTolerance tol_;
  double span_;
};

struct RunningIntegrals {
  double time = 0.0;
  double f = 0.0;
  std::complex<double> F{0.0, 0.0};
  double err = 0.0;
};

RunningIntegrals origin_state(const FieldSpec& spec, double t0) {
  if (t0 == 0.0 && spec.anchor()) {
    const Anchor& a = *spec.anchor();
    return {a.time, a.f, a.F, 0.0};
  }
  return {t0, 0.0, {0.0, 0.0}, 0.0};
}

void check_span(const FieldSpec& spec, double start, double end) {
  const FieldDomain d = spec.domain();
  const bool lo_ok = d.lo_open ? start > d.lo : start >= d.lo;
  const bool hi_ok = d.hi_open ? end < d.hi : end <= d.hi;
  if (!lo_ok || !hi_ok) {
    std::string msg = "phase integrals over [" + describe_time(start) + ", " + describe_time(end) +
                      "] leave the domain of " + spec.describe();
    if (!lo_ok && d.lo_open && start == d.lo) msg += "; the field is singular there, anchor it at a positive time";
    throw DomainError(msg);
  }
}

// Integrate from state.time to t_next, crossing kinks and impulses.
void advance(const FieldSpec& spec, RunningIntegrals& state, double t_next, const PanelIntegrator& integrator) {
  if (t_next == state.time) return;
  check_span(spec, state.time, t_next);

  struct Break {
    double time;
    double weight;
    bool impulse;
  };
  std::vector<Break> breaks;
  for (double k : spec.kinks())
    if (k > state.time && k < t_next) breaks.push_back({k, 0.0, false});
  for (const Impulse& imp : spec.impulses())
    if (imp.time > state.time && imp.time <= t_next) breaks.push_back({imp.time, imp.weight, true});
  std::stable_sort(breaks.begin(), breaks.end(), [](const Break& x, const Break& y) { return x.time < y.time; });

  auto integrate_to = [&](double end) {
    const Increment inc = integrator.integrate(state.time, end);
    state.F += std::polar(1.0, -state.f) * inc.dG;
    state.f += inc.df;
    state.err += inc.err_F;
    state.time = end;
  };

  for (const Break& b : breaks) {
    integrate_to(b.time);
    if (b.impulse) state.f += b.weight;
  }
  integrate_to(t_next);
}

}  // namespace

bool FieldDomain::contains(double t) const {
  const bool lo_ok = lo_open ? t > lo : t >= lo;
  const bool hi_ok = hi_open ? t < hi : t <= hi;
  return lo_ok && hi_ok;
}

FieldSpec FieldSpec::zero() { return FieldSpec(smooth::Zero{}); }

FieldSpec FieldSpec::constant(double alpha) {
  require_finite(alpha, "constant field");
  return FieldSpec(smooth::Constant{alpha});
}

FieldSpec FieldSpec::tabulated(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw DomainError("tabulated field needs at least two (time, value) knots");
  require_increasing(times, "table knot times");
  for (double v : values) require_finite(v, "table values");
  return FieldSpec(smooth::Tabulated{std::move(times), std::move(values)});
}

FieldSpec FieldSpec::uniform_acceleration(double a, double v, double anchor_time) {
  if (!(a > 0.0) || !(v >= 0.0 && v < 1.0) || !std::isfinite(a))
    throw DomainError("uniform acceleration requires a > 0 and 0 <= v < 1");
  if (!(anchor_time > 0.0 && anchor_time < (1.0 - v) / a))
    throw DomainError("uniform acceleration anchor must lie in (0, (1 - v)/a)");
  FieldSpec spec(smooth::UniformAcceleration{a, v});
  spec.anchor_ = consistent_anchor(Trajectory::uniform_acceleration(a, v), anchor_time);
  return spec;
}

FieldSpec FieldSpec::mirror(double v, double anchor_time) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("mirror requires 0 < v < 1");
  if (!(anchor_time > 0.0 && anchor_time < 1.0 / v)) throw DomainError("mirror anchor must lie in (0, 1/v)");
  FieldSpec spec(smooth::Mirror{v});
  spec.impulses_.push_back(*mirror_field(v, anchor_time).impulse);
  spec.anchor_ = consistent_anchor(Trajectory::mirror(v), anchor_time);
  return spec;
}

FieldSpec FieldSpec::freeze_out(double omega, double anchor_time) {
  if (!(omega > 0.0 && omega <= 1.0)) throw DomainError("freeze-out requires 0 < omega <= 1");
  if (!(anchor_time > 0.0) || !std::isfinite(anchor_time)) throw DomainError("freeze-out anchor must be positive");
  FieldSpec spec(smooth::FreezeOut{omega});
  spec.anchor_ = consistent_anchor(Trajectory::freeze_out(omega), anchor_time);
  return spec;
}

FieldSpec FieldSpec::sampled(std::function<double(double)> alpha, std::vector<double> grid) {
  if (!alpha) throw DomainError("sampled field needs a callable");
  if (grid.size() < 2) throw DomainError("sampled field needs at least two grid points");
  require_increasing(grid, "sample grid");
  return FieldSpec(smooth::Sampled{std::move(alpha), std::move(grid)});
}

FieldSpec FieldSpec::with_impulses(std::vector<Impulse> impulses) const {
  for (std::size_t i = 0; i < impulses.size(); ++i) {
    require_finite(impulses[i].time, "impulse time");
    require_finite(impulses[i].weight, "impulse weight");
    if (!(impulses[i].time > 0.0)) throw DomainError("impulse times must be positive");
    if (i > 0 && !(impulses[i].time > impulses[i - 1].time))
      throw DomainError("impulse times must be strictly increasing");
  }
  FieldSpec copy = *this;
  copy.impulses_ = std::move(impulses);
  return copy;
}

FieldSpec FieldSpec::with_anchor(std::optional<Anchor> anchor) const {
  if (anchor) {
    require_finite(anchor->time, "anchor time");
    require_finite(anchor->f, "anchor f");
    if (!std::isfinite(anchor->F.real()) || !std::isfinite(anchor->F.imag())) throw DomainError("anchor F must be finite");
    if (!(anchor->time > 0.0)) throw DomainError("anchor time must be positive");
  }
  FieldSpec copy = *this;
  copy.anchor_ = anchor;
  return copy;
}

FieldDomain FieldSpec::domain() const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      Overloaded{
          [](const smooth::Zero&) { return FieldDomain{}; },
          [](const smooth::Constant&) { return FieldDomain{}; },
          [](const smooth::Tabulated& s) { return FieldDomain{s.times.front(), s.times.back(), false, false}; },
          [](const smooth::UniformAcceleration& s) { return FieldDomain{0.0, (1.0 - s.v) / s.a, true, true}; },
          [](const smooth::Mirror& s) { return FieldDomain{0.0, 2.0 / s.v, true, true}; },
          [inf](const smooth::FreezeOut&) { return FieldDomain{0.0, inf, true, false}; },
          [](const smooth::Sampled& s) { return FieldDomain{s.grid.front(), s.grid.back(), false, false}; },
      },
      smooth_);
}

std::vector<double> FieldSpec::kinks() const {
  if (const auto* tab = std::get_if<smooth::Tabulated>(&smooth_))
    return {tab->times.begin() + 1, tab->times.end() - 1};
  if (const auto* mir = std::get_if<smooth::Mirror>(&smooth_)) return {1.0 / mir->v};
  return {};
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  os.precision(6);
  std::visit(Overloaded{
                 [&](const smooth::Zero&) { os << "zero"; },
                 [&](const smooth::Constant& s) { os << "constant(" << s.alpha << ")"; },
                 [&](const smooth::Tabulated& s) { os << "table(" << s.times.size() << " knots)"; },
                 [&](const smooth::UniformAcceleration& s) { os << "uniform_acceleration(a=" << s.a << ", v=" << s.v << ")"; },
                 [&](const smooth::Mirror& s) { os << "mirror(v=" << s.v << ")"; },
                 [&](const smooth::FreezeOut& s) { os << "freeze_out(omega=" << s.omega << ")"; },
                 [&](const smooth::Sampled& s) { os << "sampled(" << s.grid.size() << " grid points)"; },
             },
             smooth_);
  if (!impulses_.empty()) os << " + " << impulses_.size() << " impulse(s)";
  return os.str();
}

double alpha_at(const FieldSpec& spec, double t) {
  if (!spec.domain().contains(t))
    throw DomainError("t = " + describe_time(t) + " is outside the domain of " + spec.describe());
  return std::visit(Overloaded{
                        [](const smooth::Zero&) { return 0.0; },
                        [](const smooth::Constant& s) { return s.alpha; },
                        [t](const smooth::Tabulated& s) { return interpolate_linear(s, t); },
                        [t](const smooth::UniformAcceleration& s) { return uniform_acceleration_field(s.a, s.v, t); },
                        [t](const smooth::Mirror& s) { return mirror_field(s.v, t).smooth; },
                        [t](const smooth::FreezeOut& s) { return freeze_out_field(s.omega, t); },
                        [t](const smooth::Sampled& s) { return s.alpha(t); },
                    },
                    spec.smooth());
}

PhaseIntegrals phase_integrals(const FieldSpec& spec, double t, double t0, QuadratureTolerance tol) {
  if (!std::isfinite(t) || !std::isfinite(t0)) throw DomainError("phase_integrals: times must be finite");
  if (t < t0) throw DomainError("phase_integrals: t < t0");
  if (t == t0) return {t, t0, 0.0, {0.0, 0.0}, 0.0};

  RunningIntegrals state = origin_state(spec, t0);
  if (t < state.time)
    throw DomainError("t = " + describe_time(t) + " precedes the anchor of " + spec.describe() + " at " +
                      describe_time(state.time));
  const PanelIntegrator integrator(spec, tol, t - state.time);
  advance(spec, state, t, integrator);
  return {t, t0, state.f, state.F, state.err};
}

std::vector<PhaseIntegrals> phase_integrals_sweep(const FieldSpec& spec, std::span<const double> times, double t0,
                                                  QuadratureTolerance tol) {
  std::vector<PhaseIntegrals> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw DomainError("phase_integrals_sweep: times must be finite");
    if (times[i] < t0) throw DomainError("phase_integrals_sweep: sample before t0");
    if (i > 0 && times[i] < times[i - 1]) throw DomainError("phase_integrals_sweep: times must be increasing");
  }

  RunningIntegrals state = origin_state(spec, t0);
  const PanelIntegrator integrator(spec, tol, std::max(times.back() - state.time, 0.0));
  for (double t : times) {
    if (t == t0) {
      out.push_back({t, t0, 0.0, {0.0, 0.0}, 0.0});
      continue;
    }
    if (t < state.time)
      throw DomainError("t = " + describe_time(t) + " precedes the anchor of " + spec.describe());
    advance(spec, state, t, integrator);
    out.push_back({t, t0, state.f, state.F, state.err});
  }
  return out;
}

double phase_f(const FieldSpec& spec, double t, double t0) { return phase_integrals(spec, t, t0).f; }

std::complex<double> amplitude_F(const FieldSpec& spec, double t, double t0) {
  return phase_integrals(spec, t, t0).F;
}

}  // namespace starkwave
