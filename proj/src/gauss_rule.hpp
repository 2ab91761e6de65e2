#pragma once

// Internal: fixed Gauss-Legendre rule on [-1, 1].

#include <array>
#include <cstddef>

#include <boost/math/quadrature/gauss.hpp>

namespace starkwave::detail {

template <std::size_t N>
struct GaussRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussRule() {
    using boost::math::quadrature::gauss;
    const auto& x = gauss<double, N>::abscissa();
    const auto& w = gauss<double, N>::weights();
    // Boost stores the non-negative half; for even N there is no zero node.
    static_assert(N % 2 == 0);
    for (std::size_t i = 0; i < N / 2; ++i) {
      nodes[N / 2 - 1 - i] = -x[i];
      weights[N / 2 - 1 - i] = w[i];
      nodes[N / 2 + i] = x[i];
      weights[N / 2 + i] = w[i];
    }
  }

  static const GaussRule& instance() {
    static const GaussRule rule;
    return rule;
  }
};

using Gauss16 = GaussRule<16>;

}  // namespace starkwave::detail
