#pragma once

#include <cmath>
#include <cstdlib>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace testing_support {

// J_nu(z) from the ascending power series in 50-digit arithmetic. Slow but
// independent of the recurrence used by the library.
inline double series_bessel_j(int nu, double z) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const int n = std::abs(nu);
  const big x = big(z) / 2;
  big term = 1;
  for (int k = 1; k <= n; ++k) term *= x / k;
  big sum = term;
  const big x2 = x * x;
  const big tiny("1e-45");
  for (int k = 1; k < 2000; ++k) {
    term *= -x2 / (big(k) * (k + n));
    sum += term;
    if (k > z && abs(term) < tiny) break;
  }
  double v = static_cast<double>(sum);
  if (nu < 0 && (n % 2) == 1) v = -v;
  return v;
}

}  // namespace testing_support
