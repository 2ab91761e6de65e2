#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace starkwave {

/// Physical units of the discretised continuum problem
///   -hbar^2/(2 mu a^2) [phi_{n+1} + phi_{n-1} - 2 phi_n] + a n E(tau) phi_n = i hbar d phi_n / d tau.
/// Lattice time and field follow from t = -hbar tau / (2 mu a^2) and
/// alpha = -2 mu a^3 E / hbar^2.
struct ContinuumParams {
  double mu = 1.0;
  double hbar = 1.0;
  double a = 0.1;
  std::function<double(double)> E = [](double) { return 0.0; };
};

/// I1 = int_0^tau E,  I2 = int_0^tau ds' int_0^s' E,  I3 = int_0^tau ds' [int_0^s' E]^2.
struct FieldMoments {
  double I1 = 0.0;
  double I2 = 0.0;
  double I3 = 0.0;
};

/// Built from one cumulative Gauss-Legendre pass, refined until the
/// moments change by less than 1e-14 relative.
FieldMoments field_moments(const std::function<double(double)>& E, double tau);

/// Continuum propagator density from source x to destination x' after tau
/// (the dx factor is left out):
///   sqrt(mu / 2 pi i hbar tau) exp[i mu (x - x')^2 / 2 hbar tau]
///   exp[i (x' - x) I2 / hbar tau] exp[-i x' I1 / hbar - i I3 / 2 mu hbar]
///   exp[i I2^2 / 2 mu hbar tau].
std::complex<double> continuum_kernel(const ContinuumParams& p, double x, double x_prime, double tau);

/// Lattice kernel in physical units from site n to site m after tau,
/// including the gauge phase exp(-i hbar tau / mu a^2). Dividing by a gives
/// a density comparable with continuum_kernel at x = a n, x' = a m.
std::complex<double> lattice_kernel_physical(const ContinuumParams& p, int n, int m, double tau);

struct IdentityResiduals {
  double quadratic = 0.0;  ///< quadratic-moment identity
  double linear = 0.0;  ///< linear-moment identity
};

/// Both sides of the constant-field phase identities, right-hand sides by
/// quadrature with E(s) = E0.
IdentityResiduals constant_field_identities(double E0, double tau, double mu, double hbar, double x, double x_prime);

struct PdeResiduals {
  double translation = 0.0;    ///< |(-i hbar d/dx - i hbar d/dx' + I1) K| / |K|
  double displacement = 0.0;   ///< |(x' - x - (i hbar tau / mu) d/dx + I2 / mu) K| / |K|
  double displacement_coefficient = 0.0;  ///< Re of [(x' - x) K - (i hbar tau / mu) dK/dx] / K
};

/// Central-difference (step h) check of the first-order equations obeyed by
/// continuum_kernel, with x the source coordinate.
PdeResiduals mm_pde_check(const ContinuumParams& p, double x, double x_prime, double tau, double h);

/// x(tau) of a classical particle starting at rest from 0 under force -E,
/// integrated as an ODE. Equals -I2 / mu.
double classical_displacement(const ContinuumParams& p, double tau);

struct ConvergencePoint {
  double a = 0.0;
  int source = 0;
  int destination = 0;
  double z = 0.0;               ///< Bessel argument 2|F|
  bool meissel_regime = false;  ///< |m - n| >= 10 and z >= 10 |m - n|
  std::complex<double> lattice_density;
  std::complex<double> continuum_density;
  double pointwise_error = 0.0;
  double smeared_error = 0.0;   ///< error of the kernel applied to a Gaussian packet
};

struct ConvergenceStudy {
  std::vector<ConvergencePoint> points;

  bool smeared_monotone() const;
  /// Least-squares slope of log(smeared error) against log(a).
  double smeared_order() const;
};

/// Compares lattice and continuum kernels for each spacing in `a_sequence`
/// (p.a is ignored). The smeared error tests both kernels against the packet
/// exp(-(x' - x_prime)^2 / 2 w^2) with w = smear_width.
ConvergenceStudy lattice_to_continuum_convergence(const ContinuumParams& p, std::span<const double> a_sequence,
                                                  double x, double x_prime, double tau, double smear_width = 0.3);

}  // namespace starkwave
