#pragma once

#include <span>
#include <utility>
#include <vector>

#include "starkwave/field.hpp"
#include "starkwave/propagator.hpp"

namespace starkwave {

/// Both solutions k in (-pi, pi] of cos k = nu / (2 rho), returned as
/// (k+, k-) with k+ >= 0. Throws DomainError in the tunnelling region
/// |nu| > 2 rho, where no real stationary point exists.
std::pair<double, double> stationary_ray(double nu, double rho);

/// Stationary-phase value nu arccos(|nu| / 2rho) + sign sqrt(4 rho^2 - nu^2).
/// `sign` must be +1 or -1.
double wavefront_phase(double nu, double rho, int sign);

struct CurvePoint {
  double t = 0.0;
  double nu = 0.0;
  double rho = 0.0;  ///< |F(t)|
};

/// Level set wavefront_phase(|nu|, |F(t)|, sign) = 2 pi q in the (t, nu)
/// plane. Points come in mirrored pairs (nu, -nu); the constant on the
/// right-hand side is taken as zero, so q = 0 is the light cone.
struct CausticCurve {
  int branch = 0;
  int sign = 1;
  std::vector<CurvePoint> points;
};

/// One curve per (q, sign) pair; times with no root are skipped.
std::vector<CausticCurve> caustic_curves(const FieldSpec& spec, std::span<const double> t_grid,
                                         std::span<const int> q_list);

/// Roots nu in [0, 2 rho] of wavefront_phase(nu, rho, sign) = target,
/// located by sampling monotone segments and bisecting each bracket.
std::vector<double> wavefront_roots(double rho, int sign, double target);

/// (-2|F(t)|, +2|F(t)|).
std::pair<double, double> light_cone(const FieldSpec& spec, double t);

struct FrontSample {
  double t = 0.0;
  int front = 0;     ///< largest |m - source| above threshold * row max
  double rho = 0.0;  ///< |F(t)| of the row
};

/// Empirical front per grid row; rows without positive intensity are skipped.
std::vector<FrontSample> extract_front(const IntensityGrid& grid, double threshold_fraction = 1.0e-3);

/// (1 / 2 pi) int_{-pi}^{pi} exp(i (z sin k - nu k)) dk by the periodic
/// trapezoid rule, an independent route to J_nu(z).
double bessel_integral_representation(int nu, double z);

}  // namespace starkwave
