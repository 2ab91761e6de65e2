#include "starkwave/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "starkwave/errors.hpp"
#include "starkwave/special_functions.hpp"

namespace starkwave {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormDeficitLimit = 1.0e-6;

// Phase of the kernel for nu = m - n:  -nu (arg F + pi/2) - m f, reduced mod 2 pi.
double kernel_phase(int m, int nu, double f, double argF) {
  const double fr = std::remainder(f, kTwoPi);
  const double a = std::remainder(argF + 0.5 * std::numbers::pi, kTwoPi);
  return std::remainder(-nu * a, kTwoPi) + std::remainder(-m * fr, kTwoPi);
}

Complex unit(double phase) { return {std::cos(phase), std::sin(phase)}; }

// Coefficients c_nu = e^{-i nu (arg F + pi/2)} J_nu(2|F|) for nu in [lo, hi];
// the kernel is e^{-i m f} c_{m-n}.
std::vector<Complex> difference_coefficients(int nu_lo, int nu_hi, Complex F) {
  std::vector<Complex> c(static_cast<std::size_t>(nu_hi - nu_lo + 1), Complex{0.0, 0.0});
  const double rho = std::abs(F);
  if (rho == 0.0) {
    if (nu_lo <= 0 && 0 <= nu_hi) c[static_cast<std::size_t>(-nu_lo)] = 1.0;
    return c;
  }
  const BesselRow row = bessel_j_row(nu_lo, nu_hi, 2.0 * rho);
  const double argF = std::arg(F);
  for (int nu = nu_lo; nu <= nu_hi; ++nu) c[static_cast<std::size_t>(nu - nu_lo)] = row[nu] * unit(kernel_phase(0, nu, 0.0, argF));
  return c;
}

void check_window(SiteWindow w) {
  if (w.hi < w.lo) throw DomainError("site window is empty");
}

LatticeState propagate(const PhaseIntegrals& pi, const LatticeState& state, SiteWindow output, bool parallel) {
  check_window(output);
  const SiteWindow in = state.window();
  const int nu_lo = output.lo - in.hi;
  const int nu_hi = output.hi - in.lo;
  const std::vector<Complex> c = difference_coefficients(nu_lo, nu_hi, pi.F);
  const double fr = std::remainder(pi.f, kTwoPi);

  LatticeState out;
  out.offset = output.lo;
  out.amplitudes.assign(static_cast<std::size_t>(output.size()), Complex{0.0, 0.0});
  const int n_out = output.size();
  const int n_in = in.size();

#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n_out; ++i) {
    const int m = output.lo + i;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n_in; ++j) {
      const int nu = m - (in.lo + j);
      acc += c[static_cast<std::size_t>(nu - nu_lo)] * state.amplitudes[static_cast<std::size_t>(j)];
    }
    out.amplitudes[static_cast<std::size_t>(i)] = unit(std::remainder(-m * fr, kTwoPi)) * acc;
  }

  const double deficit = state.norm() - out.norm();
  if (deficit > kNormDeficitLimit)
    throw WindowError("evolved state lost " + std::to_string(deficit) +
                      " of its norm outside the output window; use a larger window margin");
  return out;
}

void fill_row(const PhaseIntegrals& pi, int source, SiteWindow window, std::span<double> row) {
  const double rho = std::abs(pi.F);
  if (rho == 0.0) {
    std::fill(row.begin(), row.end(), 0.0);
    if (window.contains(source)) row[static_cast<std::size_t>(source - window.lo)] = 1.0;
    return;
  }
  const BesselRow j = bessel_j_row(window.lo - source, window.hi - source, 2.0 * rho);
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = j.values[k] * j.values[k];
}

IntensityGrid grid_impl(const FieldSpec& spec, int source, std::span<const double> t_samples, SiteWindow window,
                        double t0, bool parallel) {
  check_window(window);
  const std::vector<PhaseIntegrals> integrals = phase_integrals_sweep(spec, t_samples, t0);

  IntensityGrid grid;
  grid.source = source;
  grid.window = window;
  grid.times.assign(t_samples.begin(), t_samples.end());
  grid.rho.resize(integrals.size());
  const auto width = static_cast<std::size_t>(window.size());
  grid.values.assign(integrals.size() * width, 0.0);

  const auto rows = static_cast<std::ptrdiff_t>(integrals.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    grid.rho[ru] = std::abs(integrals[ru].F);
    fill_row(integrals[ru], source, window, {grid.values.data() + ru * width, width});
  }
  return grid;
}

}  // namespace

LatticeState LatticeState::delta(int site, SiteWindow window) {
  check_window(window);
  if (!window.contains(site)) throw DomainError("delta site outside its window");
  LatticeState s;
  s.offset = window.lo;
  s.amplitudes.assign(static_cast<std::size_t>(window.size()), Complex{0.0, 0.0});
  s.amplitudes[static_cast<std::size_t>(site - window.lo)] = 1.0;
  return s;
}

Complex LatticeState::at(int m) const {
  return window().contains(m) ? amplitudes[static_cast<std::size_t>(m - offset)] : Complex{0.0, 0.0};
}

double LatticeState::norm() const {
  double s = 0.0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return s;
}

Complex kernel_from_integrals(int m, int n, double f, Complex F) {
  const int nu = m - n;
  const double rho = std::abs(F);
  if (rho == 0.0) return nu == 0 ? unit(std::remainder(-m * std::remainder(f, kTwoPi), kTwoPi)) : Complex{0.0, 0.0};
  return bessel_j(nu, 2.0 * rho) * unit(kernel_phase(m, nu, f, std::arg(F)));
}

Complex kernel_element(const FieldSpec& spec, int m, int n, double t, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  return kernel_from_integrals(m, n, pi.f, pi.F);
}

KernelSlice kernel_slice(const PhaseIntegrals& pi, int n, SiteWindow window) {
  check_window(window);
  KernelSlice slice;
  slice.source = n;
  slice.window = window;
  slice.t = pi.t;
  slice.t0 = pi.t0;
  const std::vector<Complex> c = difference_coefficients(window.lo - n, window.hi - n, pi.F);
  const double fr = std::remainder(pi.f, kTwoPi);
  slice.values.resize(c.size());
  for (int m = window.lo; m <= window.hi; ++m) {
    const auto k = static_cast<std::size_t>(m - window.lo);
    slice.values[k] = unit(std::remainder(-m * fr, kTwoPi)) * c[k];
  }
  return slice;
}

KernelSlice kernel_slice(const FieldSpec& spec, int n, SiteWindow window, double t, double t0) {
  return kernel_slice(phase_integrals(spec, t, t0), n, window);
}

LatticeState evolve_state(const FieldSpec& spec, const LatticeState& state, double t, double t0, int window_margin) {
  if (window_margin < kMinWindowMargin)
    throw DomainError("evolve_state: window margin must be at least " + std::to_string(kMinWindowMargin));
  if (state.amplitudes.empty()) throw DomainError("evolve_state: empty state");
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  const int grow = static_cast<int>(std::ceil(2.0 * std::abs(pi.F))) + window_margin;
  const SiteWindow in = state.window();
  return propagate(pi, state, {in.lo - grow, in.hi + grow}, true);
}

LatticeState evolve_state_in_window(const FieldSpec& spec, const LatticeState& state, SiteWindow output, double t,
                                    double t0) {
  if (state.amplitudes.empty()) throw DomainError("evolve_state: empty state");
  return propagate(phase_integrals(spec, t, t0), state, output, true);
}

IntensityGrid intensity_grid(const FieldSpec& spec, int source, std::span<const double> t_samples, SiteWindow window,
                             double t0) {
  return grid_impl(spec, source, t_samples, window, t0, true);
}

namespace reference {

IntensityGrid intensity_grid(const FieldSpec& spec, int source, std::span<const double> t_samples, SiteWindow window,
                             double t0) {
  return grid_impl(spec, source, t_samples, window, t0, false);
}

LatticeState evolve_state_in_window(const FieldSpec& spec, const LatticeState& state, SiteWindow output, double t,
                                    double t0) {
  if (state.amplitudes.empty()) throw DomainError("evolve_state: empty state");
  return propagate(phase_integrals(spec, t, t0), state, output, false);
}

}  // namespace reference

}  // namespace starkwave
