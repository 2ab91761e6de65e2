#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace starkwave {

/// Largest argument accepted by the Bessel routines.
inline constexpr double kMaxBesselArgument = 1.0e4;

/// J_k(z) for consecutive integer orders k = order_min..order_max at a fixed z.
struct BesselRow {
  int order_min = 0;
  int order_max = 0;
  double argument = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  /// Value at an order inside [order_min, order_max]; no bounds check.
  double operator[](int order) const { return values[static_cast<std::size_t>(order - order_min)]; }
  /// Bounds-checked access; throws std::out_of_range.
  double at(int order) const;
};

/// Integer-order Bessel function of the first kind.
///
/// Evaluated by Miller's backward recurrence normalised with the
/// even-order sum J_0 + 2 sum J_2k = 1. Absolute error is below 1e-12 for
/// z <= 500. Throws DomainError for z < 0, non-finite z or
/// z > kMaxBesselArgument.
double bessel_j(int order, double z);

/// All orders in [order_min, order_max] from a single recurrence sweep.
/// Negative orders come from J_{-k} = (-1)^k J_k.
BesselRow bessel_j_row(int order_min, int order_max, double z);

/// Large-argument form i^n / sqrt(2 pi i z) exp[i (z + n^2 / (2z))].
///
/// This is one stationary-point contribution of the integral representation;
/// for real z, J_n(z) ~ 2 Re of it. Requires order >= 10 and z >= 10 * order.
std::complex<double> meissel_asymptotic(int order, double z);

}  // namespace starkwave
