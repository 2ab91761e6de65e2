#include "starkwave/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

constexpr double kRescaleThreshold = 1.0e250;
constexpr double kRescaleFactor = 1.0e-250;

void check_argument(double z) {
  if (!std::isfinite(z)) throw DomainError("bessel_j: argument is not finite");
  if (z < 0.0) throw DomainError("bessel_j: negative argument " + std::to_string(z));
  if (z > kMaxBesselArgument)
    throw DomainError("bessel_j: argument " + std::to_string(z) + " exceeds supported range 1e4");
}

int starting_order(int max_order, double z) {
  const double scale = std::max(static_cast<double>(max_order), z);
  return static_cast<int>(std::ceil(scale + 15.0 * std::sqrt(scale) + 40.0));
}

// J_0 .. J_max_order at z > 0.
std::vector<double> miller_sweep(int max_order, double z) {
  const int start = starting_order(max_order, z);
  std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
  v[static_cast<std::size_t>(start)] = 1.0;
  int live_top = start;  // highest index still holding a nonzero value

  const double two_over_z = 2.0 / z;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    double next = k * two_over_z * v[ku] - v[ku + 1];
    v[ku - 1] = next;
    if (std::abs(next) > kRescaleThreshold) {
      for (int j = k - 1; j <= live_top; ++j) v[static_cast<std::size_t>(j)] *= kRescaleFactor;
      while (live_top > k && v[static_cast<std::size_t>(live_top)] == 0.0) --live_top;
    }
  }

  double even_sum = v[0];
  for (std::size_t k = 2; k < v.size(); k += 2) even_sum += 2.0 * v[k];
  const double inv = 1.0 / even_sum;

  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = v[k] * inv;
  return out;
}

}  // namespace

double BesselRow::at(int order) const {
  if (order < order_min || order > order_max)
    throw std::out_of_range("BesselRow: order " + std::to_string(order) + " outside row");
  return (*this)[order];
}

BesselRow bessel_j_row(int order_min, int order_max, double z) {
  check_argument(z);
  if (order_min > order_max) throw DomainError("bessel_j_row: order_min > order_max");

  BesselRow row;
  row.order_min = order_min;
  row.order_max = order_max;
  row.argument = z;
  row.values.assign(static_cast<std::size_t>(order_max - order_min) + 1, 0.0);

  if (z == 0.0) {
    if (order_min <= 0 && 0 <= order_max) row.values[static_cast<std::size_t>(-order_min)] = 1.0;
    return row;
  }

  const int max_abs = std::max(std::abs(order_min), std::abs(order_max));
  const std::vector<double> positive = miller_sweep(max_abs, z);
  for (int k = order_min; k <= order_max; ++k) {
    const int a = std::abs(k);
    double value = positive[static_cast<std::size_t>(a)];
    if (k < 0 && (a % 2) != 0) value = -value;
    row.values[static_cast<std::size_t>(k - order_min)] = value;
  }
  return row;
}

double bessel_j(int order, double z) { return bessel_j_row(order, order, z).values.front(); }

std::complex<double> meissel_asymptotic(int order, double z) {
  if (!std::isfinite(z) || order < 10 || z < 10.0 * order)
    throw DomainError("meissel_asymptotic: requires order >= 10 and z >= 10 * order");
  using namespace std::complex_literals;
  const double n = order;
  // i^n / sqrt(i) = exp(i pi (2n - 1) / 4)
  const double phase = z + n * n / (2.0 * z) + std::numbers::pi * (2.0 * std::fmod(n, 4.0) - 1.0) / 4.0;
  return std::polar(1.0 / std::sqrt(2.0 * std::numbers::pi * z), phase);
}

}  // namespace starkwave
