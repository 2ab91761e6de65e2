#include "starkwave/designer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/numeric/odeint.hpp>

#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

// sqrt(1 - x^2) without cancellation near |x| = 1.
double lorentz_root(double x) { return std::sqrt((1.0 - x) * (1.0 + x)); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void check_point(const Trajectory& traj, double t) {
  const double r = traj.rho(t);
  const double rd = traj.rho_dot(t);
  if (!std::isfinite(r) || !std::isfinite(rd)) throw DomainError("trajectory is not finite at t = " + num(t));
  if (std::abs(rd) >= 1.0)
    throw SuperluminalError("target front speed |rho'| = " + num(std::abs(rd)) + " >= 1 at t = " + num(t) +
                            "; the required field would be complex");
  if (!(r > 0.0)) throw DomainError("target rho must be positive, got " + num(r) + " at t = " + num(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed-form fields

double uniform_acceleration_field(double a, double v, double t) {
  if (!(a > 0.0) || !(v >= 0.0 && v < 1.0)) throw DomainError("uniform acceleration requires a > 0, 0 <= v < 1");
  const double t_end = (1.0 - v) / a;
  if (!(t > 0.0 && t < t_end))
    throw DomainError("uniform acceleration field is singular outside (0, " + num(t_end) + "), got t = " + num(t));
  const double speed = a * t + v;
  const double root = lorentz_root(speed);
  return root / (0.5 * a * t * t + v * t) - a / root;
}

MirrorFieldValue mirror_field(double v, double t) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("mirror requires 0 < v < 1");
  const double rho = 1.0 - std::abs(v * t - 1.0);
  if (!(t > 0.0) || !(rho > 0.0))
    throw DomainError("mirror field is singular outside (0, " + num(2.0 / v) + "), got t = " + num(t));
  MirrorFieldValue out;
  out.smooth = lorentz_root(v) / rho;
  // arccos(-v) - arccos(v): the jump of arccos(rho_dot) at the reflection.
  out.impulse = Impulse{1.0 / v, 2.0 * std::asin(v)};
  return out;
}

double freeze_out_field(double omega, double t) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("freeze-out requires omega > 0");
  if (!(t > 0.0)) throw DomainError("freeze-out field is singular at t <= 0");
  const double decay = std::exp(-omega * t);
  const double radicand = 1.0 - omega * omega * decay * decay;
  if (!(radicand > 0.0))
    throw DomainError("freeze-out field is complex at t = " + num(t) + " for omega = " + num(omega));
  const double root = std::sqrt(radicand);
  return root / -std::expm1(-omega * t) + omega * omega * decay / root;
}

// ---------------------------------------------------------------------------
// Trajectories

Trajectory Trajectory::trigonometric(double alpha0) {
  if (!(alpha0 > 0.0)) throw DomainError("trigonometric trajectory requires alpha0 > 0");
  Trajectory tr;
  tr.rho = [alpha0](double t) { return 2.0 / alpha0 * std::sin(0.5 * alpha0 * t); };
  tr.rho_dot = [alpha0](double t) { return std::cos(0.5 * alpha0 * t); };
  tr.rho_ddot = [alpha0](double t) { return -0.5 * alpha0 * std::sin(0.5 * alpha0 * t); };
  tr.t_min = 0.0;
  tr.t_max = 2.0 * std::numbers::pi / alpha0;
  tr.label = "trigonometric(alpha0=" + num(alpha0) + ")";
  return tr;
}

Trajectory Trajectory::uniform_acceleration(double a, double v) {
  if (!(a > 0.0) || !(v >= 0.0 && v < 1.0)) throw DomainError("uniform acceleration requires a > 0, 0 <= v < 1");
  Trajectory tr;
  tr.rho = [a, v](double t) { return 0.5 * a * t * t + v * t; };
  tr.rho_dot = [a, v](double t) { return a * t + v; };
  tr.rho_ddot = [a](double) { return a; };
  tr.t_min = 0.0;
  tr.t_max = (1.0 - v) / a;
  tr.label = "uniform_acceleration(a=" + num(a) + ", v=" + num(v) + ")";
  return tr;
}

Trajectory Trajectory::mirror(double v) {
  if (!(v > 0.0 && v < 1.0)) throw DomainError("mirror requires 0 < v < 1");
  Trajectory tr;
  const double t_reflect = 1.0 / v;
  tr.rho = [v](double t) { return 1.0 - std::abs(v * t - 1.0); };
  tr.rho_dot = [v, t_reflect](double t) { return t < t_reflect ? v : -v; };
  tr.rho_ddot = [](double) { return 0.0; };
  tr.t_min = 0.0;
  tr.t_max = 2.0 / v;
  tr.corners.push_back({t_reflect, v, -v});
  tr.label = "mirror(v=" + num(v) + ")";
  return tr;
}

Trajectory Trajectory::freeze_out(double omega) {
  if (!(omega > 0.0)) throw DomainError("freeze-out requires omega > 0");
  Trajectory tr;
  tr.rho = [omega](double t) { return -std::expm1(-omega * t); };
  tr.rho_dot = [omega](double t) { return omega * std::exp(-omega * t); };
  tr.rho_ddot = [omega](double t) { return -omega * omega * std::exp(-omega * t); };
  tr.t_min = 0.0;
  tr.t_max = std::numeric_limits<double>::infinity();
  tr.label = "freeze_out(omega=" + num(omega) + ")";
  return tr;
}

Trajectory Trajectory::from_samples(double t_start, double step, std::vector<double> rho) {
  if (rho.size() < 4) throw DomainError("sampled trajectory needs at least four samples");
  if (!(step > 0.0)) throw DomainError("sampled trajectory needs a positive step");
  for (double r : rho)
    if (!std::isfinite(r)) throw DomainError("sampled trajectory contains a non-finite value");
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  auto spline = std::make_shared<const Spline>(rho.begin(), rho.end(), t_start, step);
  Trajectory tr;
  tr.rho = [spline](double t) { return (*spline)(t); };
  tr.rho_dot = [spline](double t) { return spline->prime(t); };
  tr.rho_ddot = [spline](double t) { return spline->double_prime(t); };
  tr.t_min = t_start;
  tr.t_max = t_start + step * static_cast<double>(rho.size() - 1);
  tr.label = "samples(" + std::to_string(rho.size()) + ")";
  return tr;
}

// ---------------------------------------------------------------------------
// Inversion

std::vector<double> default_design_grid(double t_start, double t_end, int points) {
  if (points < 2 || !(t_end > t_start)) throw DomainError("design grid needs t_end > t_start and >= 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double h = (t_end - t_start) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = t_start + h * i;
  grid.back() = t_end;
  return grid;
}

double design_alpha(double rho, double rho_dot, double rho_ddot) {
  const double root = lorentz_root(rho_dot);
  return root / rho - rho_ddot / root;
}

int resolve_branch_sign(double rho, double rho_dot, double rho_ddot, double alpha) {
  // With F = rho e^{i theta}, theta = 0 and phi = f: rho' = cos(phi) for either
  // sign, and rho'' = -sin(phi) (alpha - sin(phi) / rho) picks one.
  int best = -1;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int s : {-1, 1}) {
    const double phi = -s * std::acos(rho_dot);
    const double predicted = -std::sin(phi) * (alpha - std::sin(phi) / rho);
    const double residual = std::abs(predicted - rho_ddot);
    if (residual < best_residual) {
      best_residual = residual;
      best = s;
    }
  }
  return best;
}

Anchor consistent_anchor(const Trajectory& traj, double t) {
  check_point(traj, t);
  const double r = traj.rho(t);
  const double rd = traj.rho_dot(t);
  const double rdd = traj.rho_ddot(t);
  const int s = resolve_branch_sign(r, rd, rdd, design_alpha(r, rd, rdd));
  return Anchor{t, -s * std::acos(rd), {r, 0.0}};
}

FieldSpec design_field(const Trajectory& traj, std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw DomainError("design grid needs at least two points");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("design grid must be strictly increasing");
  if (!(t_grid.front() > traj.t_min) && traj.rho(traj.t_min) <= 0.0)
    throw DomainError("design grid starts at the singular point rho = 0");
  if (t_grid.front() < traj.t_min || t_grid.back() > traj.t_max)
    throw DomainError("design grid leaves the trajectory domain [" + num(traj.t_min) + ", " + num(traj.t_max) + "]");

  for (double t : t_grid) check_point(traj, t);

  std::vector<Impulse> impulses;
  for (const Corner& c : traj.corners) {
    if (!(c.time > t_grid.front() && c.time <= t_grid.back())) continue;
    for (double rd : {c.rho_dot_before, c.rho_dot_after})
      if (std::abs(rd) >= 1.0)
        throw SuperluminalError("corner at t = " + num(c.time) + " has |rho'| >= 1");
    impulses.push_back({c.time, std::acos(c.rho_dot_after) - std::acos(c.rho_dot_before)});
  }

  auto alpha = [traj](double t) { return design_alpha(traj.rho(t), traj.rho_dot(t), traj.rho_ddot(t)); };
  return FieldSpec::sampled(alpha, {t_grid.begin(), t_grid.end()})
      .with_impulses(std::move(impulses))
      .with_anchor(consistent_anchor(traj, t_grid.front()));
}

// ---------------------------------------------------------------------------
// Round trip

RoundtripReport roundtrip_check(const Trajectory& traj, double eps, double t_max, double tol) {
  const std::vector<double> grid = default_design_grid(eps, t_max);
  return roundtrip_check(traj, design_field(traj, grid), eps, t_max, tol);
}

RoundtripReport roundtrip_check(const Trajectory& traj, const FieldSpec& field, double eps, double t_max,
                                double tol) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 3>;  // f, Re F, Im F

  if (!(t_max > eps)) throw DomainError("roundtrip_check requires t_max > eps");
  if (std::abs(traj.rho_dot(eps)) >= 1.0)
    throw DomainError("roundtrip_check: inconsistent initialisation, |rho'(eps)| >= 1");
  const Anchor start = consistent_anchor(traj, eps);

  State x{start.f, start.F.real(), start.F.imag()};
  auto system = [&field](const State& s, State& dsdt, double t) {
    dsdt[0] = alpha_at(field, t);
    dsdt[1] = std::cos(s[0]);
    dsdt[2] = -std::sin(s[0]);
  };

  double residual = 0.0;
  auto observe = [&](const State& s, double t) {
    residual = std::max(residual, std::abs(std::hypot(s[1], s[2]) - traj.rho(t)));
  };

  std::vector<double> stops;
  for (const Impulse& imp : field.impulses())
    if (imp.time > eps && imp.time < t_max) stops.push_back(imp.time);
  stops.push_back(t_max);

  constexpr int kObservationsPerSegment = 2000;
  double t_start = eps;
  for (double t_stop : stops) {
    std::vector<double> obs(kObservationsPerSegment + 1);
    for (int i = 0; i <= kObservationsPerSegment; ++i)
      obs[static_cast<std::size_t>(i)] = t_start + (t_stop - t_start) * i / kObservationsPerSegment;
    obs.back() = t_stop;
    auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>());
    ode::integrate_times(stepper, system, x, obs.begin(), obs.end(), 1e-4, observe);
    for (const Impulse& imp : field.impulses())
      if (imp.time == t_stop) x[0] += imp.weight;
    t_start = t_stop;
  }
  return {residual, tol};
}

}  // namespace starkwave
