#include "starkwave/caustics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kRootSamples = 256;

void check_region(double nu, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("caustics: rho must be positive and finite");
  if (!std::isfinite(nu) || std::abs(nu) > 2.0 * rho)
    throw DomainError("tunnelling region: |nu| = " + std::to_string(std::abs(nu)) + " exceeds 2 rho = " +
                      std::to_string(2.0 * rho));
}

}  // namespace

std::pair<double, double> stationary_ray(double nu, double rho) {
  check_region(nu, rho);
  const double k = std::acos(std::clamp(nu / (2.0 * rho), -1.0, 1.0));
  return {k, -k};
}

double wavefront_phase(double nu, double rho, int sign) {
  if (sign != 1 && sign != -1) throw DomainError("wavefront_phase: sign must be +1 or -1");
  check_region(nu, rho);
  const double x = std::min(std::abs(nu) / (2.0 * rho), 1.0);
  const double root = std::sqrt(std::max(0.0, (2.0 * rho - nu) * (2.0 * rho + nu)));
  return nu * std::acos(x) + sign * root;
}

std::vector<double> wavefront_roots(double rho, int sign, double target) {
  std::vector<double> roots;
  if (rho == 0.0) {
    if (target == 0.0) roots.push_back(0.0);
    return roots;
  }
  const double top = 2.0 * rho;
  auto g = [&](double nu) { return wavefront_phase(std::min(nu, top), rho, sign) - target; };

  double a = 0.0;
  double ga = g(a);
  if (ga == 0.0) roots.push_back(a);
  for (int i = 1; i <= kRootSamples; ++i) {
    const double b = (i == kRootSamples) ? top : top * i / kRootSamples;
    const double gb = g(b);
    if (gb == 0.0) {
      roots.push_back(b);
    } else if (ga != 0.0 && (ga < 0.0) != (gb < 0.0)) {
      boost::math::tools::eps_tolerance<double> tol(50);
      const auto [lo, hi] = boost::math::tools::bisect(g, a, b, tol);
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    ga = gb;
  }
  return roots;
}

std::vector<CausticCurve> caustic_curves(const FieldSpec& spec, std::span<const double> t_grid,
                                         std::span<const int> q_list) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw DomainError("caustic_curves: t_grid must be increasing");
  const std::vector<PhaseIntegrals> pis = phase_integrals_sweep(spec, t_grid);

  std::vector<CausticCurve> curves;
  for (int q : q_list) {
    for (int sign : {1, -1}) {
      CausticCurve c;
      c.branch = q;
      c.sign = sign;
      for (const PhaseIntegrals& pi : pis) {
        const double rho = std::abs(pi.F);
        for (double nu : wavefront_roots(rho, sign, 2.0 * kPi * q)) {
          c.points.push_back({pi.t, nu, rho});
          if (nu != 0.0) c.points.push_back({pi.t, -nu, rho});
        }
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

std::pair<double, double> light_cone(const FieldSpec& spec, double t) {
  if (t < 0.0) throw DomainError("light_cone: t must be non-negative");
  if (t == 0.0) return {0.0, 0.0};
  const double r = 2.0 * std::abs(amplitude_F(spec, t));
  return {-r, r};
}

std::vector<FrontSample> extract_front(const IntensityGrid& grid, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
    throw DomainError("extract_front: threshold fraction must lie in (0, 1)");
  std::vector<FrontSample> out;
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    const auto row = grid.row(r);
    const double peak = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
    if (!(peak > 0.0)) continue;
    int front = 0;
    for (int m = grid.window.lo; m <= grid.window.hi; ++m)
      if (grid.at(r, m) > threshold_fraction * peak) front = std::max(front, std::abs(m - grid.source));
    out.push_back({grid.times[r], front, grid.rho.empty() ? 0.0 : grid.rho[r]});
  }
  return out;
}

double bessel_integral_representation(int nu, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("integral representation: z must be finite and >= 0");
  // The trapezoid rule on M points is exact for Fourier modes below M; the
  // integrand's spectrum is negligible beyond |nu| + z + 15 sqrt(z) + 40.
  const int m = 2 * static_cast<int>(std::abs(nu) + z + 15.0 * std::sqrt(z) + 40.0);
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < m; ++j) {
    const double k = -kPi + 2.0 * kPi * j / m;
    const double ph = z * std::sin(k) - nu * k;
    sum += std::complex<double>{std::cos(ph), std::sin(ph)};
  }
  return sum.real() / m;
}

}  // namespace starkwave
