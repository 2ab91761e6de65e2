#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "starkwave/field.hpp"

namespace starkwave {

/// A jump of d rho/dt at an isolated time (e.g. a reflection).
struct Corner {
  double time = 0.0;
  double rho_dot_before = 0.0;
  double rho_dot_after = 0.0;
};

/// Target wavefront rho(t) = |F(t)| with its first two derivatives on
/// (t_min, t_max). Must stay positive and sub-luminal (|rho_dot| < 1).
struct Trajectory {
  std::function<double(double)> rho;
  std::function<double(double)> rho_dot;
  std::function<double(double)> rho_ddot;
  double t_min = 0.0;
  double t_max = 0.0;
  std::vector<Corner> corners;
  std::string label;

  /// rho = (2 / alpha0) sin(alpha0 t / 2): reproduces a constant field.
  static Trajectory trigonometric(double alpha0);
  static Trajectory uniform_acceleration(double a, double v);
  static Trajectory mirror(double v);
  static Trajectory freeze_out(double omega);
  /// Cubic B-spline through uniformly spaced samples rho(t_start + k * step).
  static Trajectory from_samples(double t_start, double step, std::vector<double> rho);
};

/// Uniform grid of `points` times on [t_start, t_end].
std::vector<double> default_design_grid(double t_start, double t_end, int points = 2001);

/// alpha(t) = sqrt(1 - rho_dot^2) / rho - rho_ddot / sqrt(1 - rho_dot^2).
double design_alpha(double rho, double rho_dot, double rho_ddot);

/// Driving field whose |F(t)| follows the trajectory on the grid's span.
///
/// The smooth part evaluates the inversion formula on the trajectory itself
/// (exported as a table on `t_grid`); corners become impulses of weight
/// arccos(rho_dot_after) - arccos(rho_dot_before). The field is anchored at
/// t_grid.front() with the consistent (f, F).
/// Throws SuperluminalError if |rho_dot| >= 1 anywhere on the grid and
/// DomainError if rho <= 0.
FieldSpec design_field(const Trajectory& traj, std::span<const double> t_grid);

/// Branch sign s such that f = -s arccos(rho_dot), arg F = 0 reproduces
/// both rho_dot and rho_ddot under the designed alpha. Resolved
/// numerically from the second-derivative match.
int resolve_branch_sign(double rho, double rho_dot, double rho_ddot, double alpha);

/// Consistent initial data at time t for a field designed from `traj`.
Anchor consistent_anchor(const Trajectory& traj, double t);

/// Closed-form field for rho = a t^2/2 + v t; requires 0 < t < (1 - v)/a.
double uniform_acceleration_field(double a, double v, double t);

struct MirrorFieldValue {
  double smooth = 0.0;
  std::optional<Impulse> impulse;
};

/// Closed-form field for rho = 1 - |v t - 1| on 0 < t < 2/v, with the
/// reflection impulse at t = 1/v of weight 2 arcsin(v).
MirrorFieldValue mirror_field(double v, double t);

/// Closed-form field for rho = 1 - exp(-omega t); requires t > 0, omega <= 1.
double freeze_out_field(double omega, double t);

struct RoundtripReport {
  double residual = 0.0;  ///< max over [eps, t_max] of | |F(t)| - rho(t) |
  double tol = 0.0;
  bool passed() const { return residual <= tol; }
};

/// Designs the field for `traj`, integrates f' = alpha, F' = exp(-i f) from
/// t = eps with the consistent initial data and compares |F| with rho.
RoundtripReport roundtrip_check(const Trajectory& traj, double eps, double t_max, double tol);

/// Same, but drives the ODE with a caller-supplied field (used to compare
/// impulse conventions). `field` must cover [eps, t_max].
RoundtripReport roundtrip_check(const Trajectory& traj, const FieldSpec& field, double eps, double t_max,
                                double tol);

}  // namespace starkwave
