#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "starkwave/field.hpp"

namespace starkwave {

using Complex = std::complex<double>;

/// Closed interval of lattice sites [lo, hi].
struct SiteWindow {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  bool contains(int m) const { return m >= lo && m <= hi; }
  friend bool operator==(const SiteWindow&, const SiteWindow&) = default;
};

/// K_{m,n}(t; t0) for one source n over a window of destinations m.
struct KernelSlice {
  int source = 0;
  SiteWindow window;
  double t = 0.0;
  double t0 = 0.0;
  std::vector<Complex> values;

  Complex at(int m) const { return values.at(static_cast<std::size_t>(m - window.lo)); }
};

/// Amplitudes psi_n on sites offset .. offset + size - 1.
struct LatticeState {
  int offset = 0;
  std::vector<Complex> amplitudes;

  static LatticeState delta(int site, SiteWindow window);
  static LatticeState delta(int site) { return delta(site, {site, site}); }

  SiteWindow window() const { return {offset, offset + static_cast<int>(amplitudes.size()) - 1}; }
  /// Amplitude at site m, zero outside the stored window.
  Complex at(int m) const;
  double norm() const;
};

/// |K_{m,source}(t)|^2 on a (time x site) grid, row-major.
struct IntensityGrid {
  int source = 0;
  SiteWindow window;
  std::vector<double> times;
  std::vector<double> rho;  ///< |F(t)| per row
  std::vector<double> values;

  std::size_t rows() const { return times.size(); }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * static_cast<std::size_t>(window.size()), static_cast<std::size_t>(window.size())};
  }
  double at(std::size_t r, int m) const { return row(r)[static_cast<std::size_t>(m - window.lo)]; }
};

/// Kernel element from precomputed phase integrals:
///   i^{n-m} (F/|F|)^{n-m} e^{-i m f} J_{m-n}(2|F|),
/// continued to delta_{mn} e^{-i m f} where F = 0.
Complex kernel_from_integrals(int m, int n, double f, Complex F);

/// K_{m,n}(t; t0). Equals delta_{mn} at t = t0.
Complex kernel_element(const FieldSpec& spec, int m, int n, double t, double t0 = 0.0);

KernelSlice kernel_slice(const FieldSpec& spec, int n, SiteWindow window, double t, double t0 = 0.0);

/// Same slice from already computed integrals (one Bessel sweep).
KernelSlice kernel_slice(const PhaseIntegrals& pi, int n, SiteWindow window);

/// Minimum window margin accepted by evolve_state.
inline constexpr int kMinWindowMargin = 40;

/// psi(t) = K(t; t0) psi(t0) on the input window widened by
/// ceil(2|F|) + window_margin sites on each side.
LatticeState evolve_state(const FieldSpec& spec, const LatticeState& state, double t, double t0 = 0.0,
                          int window_margin = kMinWindowMargin);

/// Evolution onto an explicit output window. Throws WindowError when the
/// output norm falls short of the input norm by more than 1e-6.
LatticeState evolve_state_in_window(const FieldSpec& spec, const LatticeState& state, SiteWindow output, double t,
                                    double t0 = 0.0);

/// Intensity pattern of a point source; rows are evaluated in parallel.
IntensityGrid intensity_grid(const FieldSpec& spec, int source, std::span<const double> t_samples, SiteWindow window,
                             double t0 = 0.0);

/// Serial reference implementations of the parallel kernels, kept for
/// testing and benchmarking.
namespace reference {

IntensityGrid intensity_grid(const FieldSpec& spec, int source, std::span<const double> t_samples, SiteWindow window,
                             double t0 = 0.0);

LatticeState evolve_state_in_window(const FieldSpec& spec, const LatticeState& state, SiteWindow output, double t,
                                    double t0 = 0.0);

}  // namespace reference

}  // namespace starkwave
