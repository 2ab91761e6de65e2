#include "starkwave/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <variant>

#include <Eigen/Dense>

#include "starkwave/errors.hpp"
#include "starkwave/lattice_oracle.hpp"
#include "starkwave/special_functions.hpp"

namespace starkwave {
namespace {

constexpr int kMargin = 40;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

SiteWindow covering(int n, const PhaseIntegrals& pi) {
  const int reach = static_cast<int>(std::ceil(2.0 * std::abs(pi.F))) + kMargin;
  return {n - reach, n + reach};
}

Complex U(const PhaseIntegrals& pi, int m, int n) { return kernel_from_integrals(m, n, pi.f, pi.F); }

}  // namespace

double unitarity_residual(const FieldSpec& spec, int n, double t, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  const KernelSlice s = kernel_slice(pi, n, covering(n, pi));
  double sum = 0.0;
  for (const Complex& k : s.values) sum += std::norm(k);
  return std::abs(sum - 1.0);
}

double mm_recursion_residual(const FieldSpec& spec, int m, int n, double t, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  const Complex e = std::polar(1.0, -pi.f);
  const double r12 = std::abs(U(pi, m + 1, n) - e * U(pi, m, n - 1));
  const double r13 = std::abs(U(pi, m - 1, n) - std::conj(e) * U(pi, m, n + 1));
  return std::max(r12, r13);
}

double three_term_residual(const FieldSpec& spec, int m, int n, double t, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  const Complex i{0.0, 1.0};
  // V_{nu} read off the kernel along the row with source n.
  auto V = [&](int dest) { return std::polar(1.0, 0.5 * (n + dest) * pi.f) * U(pi, dest, n); };
  const Complex half = std::polar(1.0, 0.5 * pi.f);
  const Complex lhs = static_cast<double>(m - n) * V(m);
  const Complex rhs = i * pi.F * half * V(m + 1) - i * std::conj(pi.F) * std::conj(half) * V(m - 1);
  return std::abs(lhs - rhs);
}

double translation_residual(const FieldSpec& spec, int m, int n, int d, double t, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  return std::abs(U(pi, m + d, n + d) - std::polar(1.0, -d * pi.f) * U(pi, m, n));
}

double semigroup_residual(const FieldSpec& spec, int n, double t0, double t1, double t2) {
  if (!(t0 <= t1 && t1 <= t2)) throw DomainError("semigroup_residual needs t0 <= t1 <= t2");
  const LatticeState mid = evolve_state(spec, LatticeState::delta(n), t1, t0);
  const LatticeState two = evolve_state(spec, mid, t2, t1);
  const KernelSlice one = kernel_slice(spec, n, two.window(), t2, t0);
  double dev = 0.0;
  for (int m = two.window().lo; m <= two.window().hi; ++m) dev = std::max(dev, std::abs(two.at(m) - one.at(m)));
  return dev;
}

double heisenberg_map_residual(const FieldSpec& spec, double t, int half_width, double t0) {
  const PhaseIntegrals pi = phase_integrals(spec, t, t0);
  const SiteWindow cols{-half_width, half_width};
  const int reach = static_cast<int>(std::ceil(2.0 * std::abs(pi.F))) + kMargin + half_width;
  const SiteWindow rows{-reach, reach};

  Eigen::MatrixXcd Um(rows.size(), cols.size());
  for (int n = cols.lo; n <= cols.hi; ++n) {
    const KernelSlice s = kernel_slice(pi, n, rows);
    for (int m = rows.lo; m <= rows.hi; ++m) Um(m - rows.lo, n - cols.lo) = s.at(m);
  }
  Eigen::VectorXd sites(rows.size());
  for (int m = rows.lo; m <= rows.hi; ++m) sites(m - rows.lo) = m;
  const Eigen::MatrixXcd lhs = Um.adjoint() * sites.asDiagonal() * Um;

  const Complex i{0.0, 1.0};
  double dev = 0.0;
  for (int a = cols.lo; a <= cols.hi; ++a) {
    for (int b = cols.lo; b <= cols.hi; ++b) {
      Complex expected{0.0, 0.0};
      if (a == b) expected = static_cast<double>(a);
      if (b == a + 1) expected = i * pi.F;
      if (b == a - 1) expected = -i * std::conj(pi.F);
      dev = std::max(dev, std::abs(lhs(a - cols.lo, b - cols.lo) - expected));
    }
  }
  return dev;
}

double constant_phase_residual(double alpha, int m, int n, double t) {
  const PhaseIntegrals pi = phase_integrals(FieldSpec::constant(alpha), t);
  const double rho = std::abs(pi.F);
  if (rho == 0.0) return 0.0;
  const int p = n - m;
  const Complex lhs = std::polar(1.0, std::remainder(p * std::arg(pi.F), kTwoPi) - std::remainder(m * pi.f, kTwoPi));
  Complex rhs = std::polar(1.0, -std::remainder((n + m) * alpha * t / 2.0, kTwoPi));
  // F = e^{-i alpha t/2} (2/alpha) sin(alpha t/2): past the half period the
  // unit factor F/|F| picks up a sign.
  if (std::sin(alpha * t / 2.0) < 0.0 && (p % 2) != 0) rhs = -rhs;
  return std::abs(lhs - rhs);
}

std::vector<SuiteEntry> invariant_suite(const FieldSpec& spec, const SuiteOptions& opt) {
  if (opt.samples < 1) throw DomainError("invariant suite needs at least one sample time");
  double t0 = opt.t0;
  if (spec.anchor() && t0 < spec.anchor()->time) t0 = spec.anchor()->time;
  if (!(opt.t1 > t0)) throw DomainError("invariant suite needs t1 > t0 (after anchoring)");

  std::vector<double> times;
  for (int k = 1; k <= opt.samples; ++k) times.push_back(t0 + (opt.t1 - t0) * k / opt.samples);

  double initial = 0.0, speed = 0.0, unit = 0.0, rec = 0.0, three = 0.0, trans = 0.0, heis = 0.0, cphase = 0.0,
         norm = 0.0;
  const KernelSlice id = kernel_slice(spec, 0, {-3, 3}, t0, t0);
  for (int m = -3; m <= 3; ++m) initial = std::max(initial, std::abs(id.at(m) - (m == 0 ? 1.0 : 0.0)));

  const auto* constant = std::get_if<smooth::Constant>(&spec.smooth());
  for (double t : times) {
    const PhaseIntegrals pi = phase_integrals(spec, t, t0);
    speed = std::max(speed, std::abs(pi.F) - (t - t0));
    unit = std::max(unit, unitarity_residual(spec, 0, t, t0));
    for (auto [m, n] : {std::pair{0, 0}, {3, -1}, {-2, 4}, {5, 5}}) {
      rec = std::max(rec, mm_recursion_residual(spec, m, n, t, t0));
      three = std::max(three, three_term_residual(spec, m, n, t, t0));
      for (int d : {-3, 1, 7}) trans = std::max(trans, translation_residual(spec, m, n, d, t, t0));
      if (constant && t0 == 0.0 && spec.impulses().empty())
        cphase = std::max(cphase, constant_phase_residual(constant->alpha, m, n, t));
    }
    heis = std::max(heis, heisenberg_map_residual(spec, t, 4, t0));
    const BesselRow row = bessel_j_row(-static_cast<int>(2.0 * std::abs(pi.F)) - 60,
                                       static_cast<int>(2.0 * std::abs(pi.F)) + 60, 2.0 * std::abs(pi.F));
    double s = 0.0;
    for (double v : row.values) s += v * v;
    norm = std::max(norm, std::abs(s - 1.0));
  }

  const double mid = 0.5 * (t0 + opt.t1);
  const double semi = semigroup_residual(spec, 0, t0, mid, opt.t1);

  const int half = static_cast<int>(std::ceil(2.0 * (opt.t1 - t0))) + 60;
  const OracleResult orr =
      integrate_schrodinger_report(spec, LatticeState::delta(0, {-half, half}), opt.t1, 1.0e-8, t0);
  const KernelSlice exact = kernel_slice(spec, 0, {-half, half}, opt.t1, t0);
  double oracle = 0.0;
  for (int m = -half; m <= half; ++m) oracle = std::max(oracle, std::abs(exact.at(m) - orr.state.at(m)));

  const CommutatorReport comm = commutator_check(12, times.front(), times.back(), spec);

  std::vector<SuiteEntry> out{
      {"kernel.initial_identity", initial, 1e-15},
      {"field.speed_bound", std::max(speed, 0.0), 1e-10},
      {"bessel.normalization", norm, 1e-12},
      {"kernel.unitarity", unit, opt.unitarity_tol},
      {"kernel.mm_recursion", rec, opt.recursion_tol},
      {"kernel.three_term", three, opt.recursion_tol},
      {"kernel.translation", trans, opt.translation_tol},
      {"kernel.heisenberg_map", heis, opt.heisenberg_tol},
      {"kernel.semigroup", semi, opt.semigroup_tol},
      {"oracle.agreement", oracle, opt.oracle_tol},
      {"oracle.norm_drift", std::abs(orr.state.norm() - 1.0), 1e-10},
      {"oracle.commutator", comm.residual, 1e-14},
  };
  if (constant && t0 == 0.0 && spec.impulses().empty())
    out.push_back({"kernel.constant_phase", cphase, 1e-10});
  return out;
}

}  // namespace starkwave
