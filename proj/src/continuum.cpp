#include "starkwave/continuum.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "gauss_rule.hpp"
#include "starkwave/errors.hpp"
#include "starkwave/propagator.hpp"

namespace starkwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxPanels = 1 << 14;

// Visits every Gauss node s of a P-panel rule on [0, tau] with its weight
// and the cumulative integral G(s) = int_0^s E.
template <class Visit>
void cumulative_pass(const std::function<double(double)>& E, double tau, int panels, Visit&& visit) {
  const auto& g = detail::Gauss16::instance();
  const double h = tau / panels;
  double G0 = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      const double s = a + half * (1.0 + g.nodes[j]);
      // int_a^s E by the same rule mapped onto [a, s]
      const double hs = 0.5 * (s - a);
      double part = 0.0;
      for (std::size_t k = 0; k < g.nodes.size(); ++k) part += g.weights[k] * E(a + hs * (1.0 + g.nodes[k]));
      visit(s, half * g.weights[j], G0 + hs * part);
      panel += g.weights[j] * E(s);
    }
    G0 += half * panel;
  }
}

template <class Compute>
auto refine(Compute&& compute, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("continuum: tau must be positive and finite");
  int panels = 8;
  auto prev = compute(panels);
  for (panels *= 2; panels <= kMaxPanels; panels *= 2) {
    auto next = compute(panels);
    if (next.close_to(prev)) return next;
    prev = next;
  }
  throw QuadratureError("continuum: field moments did not converge; is E smooth on [0, tau]?");
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)); }

struct MomentsResult {
  FieldMoments m;
  bool close_to(const MomentsResult& o) const {
    return close(m.I1, o.m.I1) && close(m.I2, o.m.I2) && close(m.I3, o.m.I3);
  }
};

struct LatticeIntegrals {
  double G = 0.0;                   // int_0^tau E
  std::complex<double> phase_int;   // int_0^tau exp(-i a G(s) / hbar) ds
  bool close_to(const LatticeIntegrals& o) const {
    return close(G, o.G) && std::abs(phase_int - o.phase_int) <= 1e-14 * (1.0 + std::abs(phase_int));
  }
};

double gaussian(double x, double centre, double w) {
  const double u = (x - centre) / w;
  return std::exp(-0.5 * u * u);
}

}  // namespace

FieldMoments field_moments(const std::function<double(double)>& E, double tau) {
  return refine(
             [&](int panels) {
               MomentsResult r;
               double G_end = 0.0;
               cumulative_pass(E, tau, panels, [&](double, double w, double G) {
                 r.m.I2 += w * G;
                 r.m.I3 += w * G * G;
               });
               // I1 from a direct pass keeps it independent of the node interpolation
               const auto& g = detail::Gauss16::instance();
               const double h = tau / panels;
               for (int p = 0; p < panels; ++p)
                 for (std::size_t j = 0; j < g.nodes.size(); ++j)
                   G_end += 0.5 * h * g.weights[j] * E(p * h + 0.5 * h * (1.0 + g.nodes[j]));
               r.m.I1 = G_end;
               return r;
             },
             tau)
      .m;
}

std::complex<double> continuum_kernel(const ContinuumParams& p, double x, double x_prime, double tau) {
  if (!(p.mu > 0.0 && p.hbar > 0.0)) throw DomainError("continuum: mu and hbar must be positive");
  const FieldMoments fm = field_moments(p.E, tau);
  const double ht = p.hbar * tau;
  const double d = x - x_prime;
  const double phase = p.mu * d * d / (2.0 * ht) + (x_prime - x) * fm.I2 / ht - x_prime * fm.I1 / p.hbar -
                       fm.I3 / (2.0 * p.mu * p.hbar) + fm.I2 * fm.I2 / (2.0 * p.mu * ht) - 0.25 * kPi;
  return std::sqrt(p.mu / (2.0 * kPi * ht)) * std::polar(1.0, phase);
}

namespace {

struct LatticePhase {
  double f = 0.0;
  std::complex<double> F;
  double gauge = 0.0;
};

LatticePhase lattice_phase(const ContinuumParams& p, double tau) {
  if (!(p.mu > 0.0 && p.hbar > 0.0 && p.a > 0.0)) throw DomainError("continuum: mu, hbar and a must be positive");
  const double G = field_moments(p.E, tau).I1;
  const LatticeIntegrals li = refine(
      [&](int panels) {
        LatticeIntegrals r;
        r.G = G;
        cumulative_pass(p.E, tau, panels, [&](double, double w, double Gs) {
          r.phase_int += w * std::polar(1.0, -p.a * Gs / p.hbar);
        });
        return r;
      },
      tau);
  LatticePhase lp;
  lp.f = p.a * G / p.hbar;
  lp.F = -(p.hbar / (2.0 * p.mu * p.a * p.a)) * li.phase_int;
  lp.gauge = std::remainder(p.hbar * tau / (p.mu * p.a * p.a), 2.0 * kPi);
  return lp;
}

std::complex<double> lattice_kernel(const LatticePhase& lp, int n, int m) {
  return kernel_from_integrals(m, n, lp.f, lp.F) * std::polar(1.0, -lp.gauge);
}

}  // namespace

std::complex<double> lattice_kernel_physical(const ContinuumParams& p, int n, int m, double tau) {
  return lattice_kernel(lattice_phase(p, tau), n, m);
}

IdentityResiduals constant_field_identities(double E0, double tau, double mu, double hbar, double x, double x_prime) {
  if (!(tau > 0.0 && mu > 0.0 && hbar > 0.0)) throw DomainError("identities: tau, mu and hbar must be positive");
  const FieldMoments fm = field_moments([E0](double) { return E0; }, tau);
  const std::complex<double> i{0.0, 1.0};

  const std::complex<double> lhs14 = -i * E0 * E0 * tau * tau * tau / (24.0 * mu * hbar);
  const std::complex<double> rhs14 =
      i * fm.I2 * fm.I2 / (2.0 * mu * hbar * tau) - i * fm.I3 / (2.0 * mu * hbar);
  const std::complex<double> lhs15 = -i * (x + x_prime) * E0 * tau / (2.0 * hbar);
  const std::complex<double> rhs15 = i * (x_prime - x) * fm.I2 / (hbar * tau) - i * x_prime * fm.I1 / hbar;
  return {std::abs(lhs14 - rhs14), std::abs(lhs15 - rhs15)};
}

PdeResiduals mm_pde_check(const ContinuumParams& p, double x, double x_prime, double tau, double h) {
  if (!(h > 0.0)) throw DomainError("mm_pde_check: h must be positive");
  const FieldMoments fm = field_moments(p.E, tau);
  const std::complex<double> i{0.0, 1.0};
  auto K = [&](double xs, double xd) { return continuum_kernel(p, xs, xd, tau); };

  const std::complex<double> k0 = K(x, x_prime);
  const std::complex<double> dx = (K(x + h, x_prime) - K(x - h, x_prime)) / (2.0 * h);
  const std::complex<double> dxp = (K(x, x_prime + h) - K(x, x_prime - h)) / (2.0 * h);

  PdeResiduals r;
  r.translation = std::abs(-i * p.hbar * dx - i * p.hbar * dxp + fm.I1 * k0) / std::abs(k0);
  const std::complex<double> disp = (x_prime - x) * k0 - (i * p.hbar * tau / p.mu) * dx;
  r.displacement = std::abs(disp + (fm.I2 / p.mu) * k0) / std::abs(k0);
  r.displacement_coefficient = (disp / k0).real();
  return r;
}

double classical_displacement(const ContinuumParams& p, double tau) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 2>;  // (x, p)
  State s{0.0, 0.0};
  auto rhs = [&](const State& y, State& dy, double t) {
    dy[0] = y[1] / p.mu;
    dy[1] = -p.E(t);
  };
  ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()), rhs, s, 0.0, tau,
                          tau / 100.0);
  return s[0];
}

bool ConvergenceStudy::smeared_monotone() const {
  for (std::size_t k = 1; k < points.size(); ++k)
    if (!(points[k].smeared_error < points[k - 1].smeared_error)) return false;
  return true;
}

double ConvergenceStudy::smeared_order() const {
  const std::size_t n = points.size();
  if (n < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const ConvergencePoint& pt : points) {
    const double lx = std::log(pt.a);
    const double ly = std::log(pt.smeared_error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

ConvergenceStudy lattice_to_continuum_convergence(const ContinuumParams& p, std::span<const double> a_sequence,
                                                  double x, double x_prime, double tau, double smear_width) {
  if (!(smear_width > 0.0)) throw DomainError("convergence: smear width must be positive");
  for (std::size_t k = 1; k < a_sequence.size(); ++k)
    if (!(a_sequence[k] < a_sequence[k - 1])) throw DomainError("convergence: a_sequence must decrease");

  // Continuum side of the smeared comparison: trapezoid over +-10 widths.
  constexpr int kPanels = 8000;
  const double lo = x_prime - 10.0 * smear_width;
  const double step = 20.0 * smear_width / kPanels;
  std::complex<double> smeared_cont{0.0, 0.0};
  for (int j = 0; j <= kPanels; ++j) {
    const double xd = lo + j * step;
    const double w = (j == 0 || j == kPanels) ? 0.5 : 1.0;
    smeared_cont += w * step * continuum_kernel(p, x, xd, tau) * gaussian(xd, x_prime, smear_width);
  }

  ConvergenceStudy study;
  study.points.resize(a_sequence.size());
  const auto count = static_cast<std::ptrdiff_t>(a_sequence.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    ContinuumParams q = p;
    q.a = a_sequence[static_cast<std::size_t>(k)];
    ConvergencePoint& pt = study.points[static_cast<std::size_t>(k)];
    pt.a = q.a;
    pt.source = static_cast<int>(std::lround(x / q.a));
    pt.destination = static_cast<int>(std::lround(x_prime / q.a));
    const int nu = std::abs(pt.destination - pt.source);

    const double xs = q.a * pt.source;
    const double xd = q.a * pt.destination;
    const LatticePhase lp = lattice_phase(q, tau);
    pt.lattice_density = lattice_kernel(lp, pt.source, pt.destination) / q.a;
    pt.continuum_density = continuum_kernel(q, xs, xd, tau);
    pt.pointwise_error = std::abs(pt.lattice_density - pt.continuum_density);
    pt.z = q.hbar * tau / (q.mu * q.a * q.a);
    pt.meissel_regime = nu >= 10 && pt.z >= 10.0 * nu;

    // Lattice side: the packet sampled on sites, one kernel row.
    const int reach = static_cast<int>(std::ceil(10.0 * smear_width / q.a));
    const int centre = static_cast<int>(std::lround(x_prime / q.a));
    const SiteWindow window{centre - reach, centre + reach};
    std::complex<double> smeared_lat{0.0, 0.0};
    for (int m = window.lo; m <= window.hi; ++m)
      smeared_lat += lattice_kernel(lp, pt.source, m) * gaussian(q.a * m, x_prime, smear_width);
    pt.smeared_error = std::abs(smeared_lat - smeared_cont);
  }
  return study;
}

}  // namespace starkwave
