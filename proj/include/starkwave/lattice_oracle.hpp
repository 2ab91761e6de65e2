#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "starkwave/field.hpp"
#include "starkwave/propagator.hpp"

namespace starkwave {

/// T, T^dagger and N restricted to a finite window of sites.
/// (T psi)_n = psi_{n+1}, (T^dagger psi)_n = psi_{n-1}, (N psi)_n = n psi_n.
struct TruncatedOperators {
  SiteWindow window;
  Eigen::MatrixXd T;
  Eigen::MatrixXd Tdag;
  Eigen::MatrixXd N;

  explicit TruncatedOperators(SiteWindow w);

  int size() const { return window.size(); }
  /// H = T + T^dagger + alpha N.
  Eigen::MatrixXd hamiltonian(double alpha) const;
};

struct OracleResult {
  LatticeState state;
  long steps = 0;           ///< steps of the accepted (finest) run
  double error_estimate = 0.0;
};

/// Solves i d psi/dt = (T + T^dagger + alpha(t) N) psi on the window of
/// `initial` from t0 to t_final with the implicit midpoint (Crank-Nicolson)
/// rule, doubling the step count until successive runs differ by at most
/// 3 tol. Impulses act as exact kicks psi_n -> exp(-i w n) psi_n.
///
/// Throws WindowError if an edge amplitude exceeds 1e-9 and StepSizeError
/// when the step count would exceed 2^26.
OracleResult integrate_schrodinger_report(const FieldSpec& spec, const LatticeState& initial, double t_final,
                                          double tol = 1.0e-8, double t0 = 0.0);

LatticeState integrate_schrodinger(const FieldSpec& spec, const LatticeState& initial, double t_final,
                                   double tol = 1.0e-8, double t0 = 0.0);

/// Single Crank-Nicolson run with about (t_final - t0) / h steps; steps are
/// aligned with impulse times and table knots.
LatticeState integrate_schrodinger_fixed(const FieldSpec& spec, const LatticeState& initial, double t_final,
                                         double h, double t0 = 0.0);

/// max_m |K_{m,source}(t; t0) - psi_m(t)| for a delta started at `source`
/// on the window source +- half_width.
double compare_kernel_oracle(const FieldSpec& spec, int source, double t, double t0 = 0.0, int half_width = 100,
                             double tol = 1.0e-8);

struct CommutatorReport {
  double residual = 0.0;
  std::optional<std::string> warning;
};

/// max over interior rows of |[H(t), H(t')] - (alpha(t) - alpha(t'))(T^dagger - T)|
/// on a window of `size` sites centred on the origin.
CommutatorReport commutator_check(int size, double t, double t_prime, const FieldSpec& spec);

/// max over interior rows of the residuals of [T, T^dagger] = 0,
/// [T, N] = T and [T^dagger, N] = -T^dagger.
double algebra_residual(const TruncatedOperators& ops);

}  // namespace starkwave
