#pragma once

#include <string>
#include <vector>

#include "starkwave/field.hpp"
#include "starkwave/propagator.hpp"

namespace starkwave {

/// |sum_m |K_{m,n}(t; t0)|^2 - 1| over the window n +- (ceil(2|F|) + 40).
double unitarity_residual(const FieldSpec& spec, int n, double t, double t0 = 0.0);

/// max of |U_{m+1,n} - e^{-if} U_{m,n-1}| and |U_{m-1,n} - e^{if} U_{m,n+1}|.
double mm_recursion_residual(const FieldSpec& spec, int m, int n, double t, double t0 = 0.0);

/// With V_{m-n} = e^{i(n+m)f/2} U_{m,n}:
///   |(m-n) V_{m-n} - i F e^{if/2} V_{m-n+1} + i F* e^{-if/2} V_{m-n-1}|.
double three_term_residual(const FieldSpec& spec, int m, int n, double t, double t0 = 0.0);

/// |K_{m+d,n+d} - e^{-i d f} K_{m,n}|.
double translation_residual(const FieldSpec& spec, int m, int n, int d, double t, double t0 = 0.0);

/// max_m |(K(t2; t1) K(t1; t0) delta_n)_m - K_{m,n}(t2; t0)|.
double semigroup_residual(const FieldSpec& spec, int n, double t0, double t1, double t2);

/// max over |a|, |b| <= half_width of |(U^dagger N U)_{ab} - (N + iF T - iF* T^dagger)_{ab}|,
/// with the inner sum over a window wide enough to hold the kernel rows.
double heisenberg_map_residual(const FieldSpec& spec, double t, int half_width = 5, double t0 = 0.0);

/// For a constant field alpha: |(F/|F|)^{n-m} e^{-imf} - s^{n-m} e^{-i(n+m) alpha t / 2}|
/// with s the sign of sin(alpha t / 2), where |F| is not zero.
double constant_phase_residual(double alpha, int m, int n, double t);

struct SuiteEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

struct SuiteOptions {
  double t0 = 0.0;
  double t1 = 5.0;
  int samples = 5;
  double unitarity_tol = 1.0e-10;
  double recursion_tol = 1.0e-10;
  double translation_tol = 1.0e-13;
  double semigroup_tol = 1.0e-8;
  double oracle_tol = 1.0e-6;
  double heisenberg_tol = 1.0e-8;
};

/// Every invariant of the field, kernel and oracle layers evaluated on
/// `samples` times in (t0, t1]. Anchored fields are started at their anchor
/// when t0 precedes it.
std::vector<SuiteEntry> invariant_suite(const FieldSpec& spec, const SuiteOptions& opt = {});

}  // namespace starkwave
