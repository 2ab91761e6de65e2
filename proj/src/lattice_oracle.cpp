#include "starkwave/lattice_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

constexpr double kEdgeLimit = 1.0e-9;
constexpr long kMaxSteps = 1L << 26;

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double kick = 0.0;  // impulse weight applied at b
};

std::vector<Segment> segments(const FieldSpec& spec, double t0, double t1) {
  std::vector<double> cuts;
  for (double k : spec.kinks())
    if (k > t0 && k < t1) cuts.push_back(k);
  for (const Impulse& imp : spec.impulses())
    if (imp.time > t0 && imp.time <= t1) cuts.push_back(imp.time);
  cuts.push_back(t1);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> out;
  double a = t0;
  for (double b : cuts) {
    Segment s{a, b, 0.0};
    for (const Impulse& imp : spec.impulses())
      if (imp.time == b) s.kick = imp.weight;
    out.push_back(s);
    a = b;
  }
  return out;
}

class CrankNicolson {
 public:
  explicit CrankNicolson(SiteWindow w) : window_(w), n_(static_cast<std::size_t>(w.size())), cp_(n_), rhs_(n_) {}

  // One implicit-midpoint step of length dt with the field value alpha.
  void step(std::vector<Complex>& psi, double alpha, double dt) {
    const Complex c{0.0, 0.5 * dt};  // i dt / 2
    for (std::size_t j = 0; j < n_; ++j) {
      const double site = window_.lo + static_cast<double>(j);
      Complex hop = 0.0;
      if (j > 0) hop += psi[j - 1];
      if (j + 1 < n_) hop += psi[j + 1];
      rhs_[j] = (1.0 - c * alpha * site) * psi[j] - c * hop;
    }
    // Thomas algorithm, sub- and super-diagonal both equal to c.
    Complex denom = 1.0 + c * alpha * static_cast<double>(window_.lo);
    cp_[0] = c / denom;
    psi[0] = rhs_[0] / denom;
    for (std::size_t j = 1; j < n_; ++j) {
      const double site = window_.lo + static_cast<double>(j);
      denom = 1.0 + c * alpha * site - c * cp_[j - 1];
      cp_[j] = c / denom;
      psi[j] = (rhs_[j] - c * psi[j - 1]) / denom;
    }
    for (std::size_t j = n_ - 1; j-- > 0;) psi[j] -= cp_[j] * psi[j + 1];
  }

  void kick(std::vector<Complex>& psi, double weight) const {
    for (std::size_t j = 0; j < n_; ++j) {
      const double phase = -weight * (window_.lo + static_cast<double>(j));
      psi[j] *= Complex{std::cos(phase), std::sin(phase)};
    }
  }

  void check_edges(const std::vector<Complex>& psi, double t) const {
    const double edge = std::max(std::abs(psi.front()), std::abs(psi.back()));
    if (edge > kEdgeLimit)
      throw WindowError("oracle window [" + std::to_string(window_.lo) + ", " + std::to_string(window_.hi) +
                        "] leaks at t = " + std::to_string(t) + " (edge amplitude " + std::to_string(edge) + ")");
  }

 private:
  SiteWindow window_;
  std::size_t n_;
  std::vector<Complex> cp_;
  std::vector<Complex> rhs_;
};

void check_inputs(const FieldSpec& spec, const LatticeState& initial, double t0, double t1) {
  if (initial.amplitudes.size() < 3) throw DomainError("oracle window needs at least 3 sites");
  if (!(t1 >= t0)) throw DomainError("oracle: t_final must not precede t0");
  if (!spec.domain().contains(t0))
    throw DomainError("oracle: start time " + std::to_string(t0) + " outside the domain of " + spec.describe());
}

// Runs with a nominal step h; returns the number of steps taken.
long run(const FieldSpec& spec, std::vector<Complex>& psi, SiteWindow w, double t0, double t1, double h) {
  CrankNicolson cn(w);
  long steps = 0;
  for (const Segment& s : segments(spec, t0, t1)) {
    const double len = s.b - s.a;
    if (len > 0.0) {
      const long k = std::max(1L, static_cast<long>(std::ceil(len / h - 1e-9)));
      const double dt = len / static_cast<double>(k);
      for (long i = 0; i < k; ++i) {
        const double mid = s.a + (static_cast<double>(i) + 0.5) * dt;
        cn.step(psi, alpha_at(spec, mid), dt);
        cn.check_edges(psi, mid + 0.5 * dt);
      }
      steps += k;
    }
    if (s.kick != 0.0) cn.kick(psi, s.kick);
  }
  return steps;
}

}  // namespace

TruncatedOperators::TruncatedOperators(SiteWindow w) : window(w) {
  if (w.hi < w.lo) throw DomainError("truncated operators need a non-empty window");
  const int n = w.size();
  T = Eigen::MatrixXd::Zero(n, n);
  N = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) T(i, i + 1) = 1.0;
  for (int i = 0; i < n; ++i) N(i, i) = w.lo + i;
  Tdag = T.transpose();
}

Eigen::MatrixXd TruncatedOperators::hamiltonian(double alpha) const { return T + Tdag + alpha * N; }

OracleResult integrate_schrodinger_report(const FieldSpec& spec, const LatticeState& initial, double t_final,
                                          double tol, double t0) {
  check_inputs(spec, initial, t0, t_final);
  if (!(tol > 0.0)) throw DomainError("oracle tolerance must be positive");
  OracleResult res;
  res.state = initial;
  const double span = t_final - t0;
  if (span == 0.0) return res;

  const SiteWindow w = initial.window();
  long target = std::max(32L, static_cast<long>(std::ceil(8.0 * span)));
  if (2 * target > kMaxSteps)
    throw StepSizeError("oracle step size underflow: " + std::to_string(2 * target) + " steps would be needed");
  std::vector<Complex> coarse = initial.amplitudes;
  run(spec, coarse, w, t0, t_final, span / static_cast<double>(target));
  for (;;) {
    target *= 2;
    if (target > kMaxSteps)
      throw StepSizeError("oracle step size underflow: " + std::to_string(target) + " steps would be needed");
    std::vector<Complex> fine = initial.amplitudes;
    const long steps = run(spec, fine, w, t0, t_final, span / static_cast<double>(target));
    double diff = 0.0;
    for (std::size_t j = 0; j < fine.size(); ++j) diff = std::max(diff, std::abs(fine[j] - coarse[j]));
    if (diff / 3.0 <= tol) {
      res.state.amplitudes = std::move(fine);
      res.steps = steps;
      res.error_estimate = diff / 3.0;
      return res;
    }
    coarse = std::move(fine);
  }
}

LatticeState integrate_schrodinger(const FieldSpec& spec, const LatticeState& initial, double t_final, double tol,
                                   double t0) {
  return integrate_schrodinger_report(spec, initial, t_final, tol, t0).state;
}

LatticeState integrate_schrodinger_fixed(const FieldSpec& spec, const LatticeState& initial, double t_final, double h,
                                         double t0) {
  check_inputs(spec, initial, t0, t_final);
  if (!(h > 0.0)) throw DomainError("oracle step must be positive");
  LatticeState out = initial;
  if (t_final > t0) run(spec, out.amplitudes, initial.window(), t0, t_final, h);
  return out;
}

double compare_kernel_oracle(const FieldSpec& spec, int source, double t, double t0, int half_width, double tol) {
  if (half_width < 1) throw DomainError("oracle half width must be positive");
  const SiteWindow w{source - half_width, source + half_width};
  const LatticeState psi = integrate_schrodinger(spec, LatticeState::delta(source, w), t, tol, t0);
  const KernelSlice k = kernel_slice(spec, source, w, t, t0);
  double dev = 0.0;
  for (int m = w.lo; m <= w.hi; ++m) dev = std::max(dev, std::abs(k.at(m) - psi.at(m)));
  return dev;
}

CommutatorReport commutator_check(int size, double t, double t_prime, const FieldSpec& spec) {
  if (size < 1) throw DomainError("commutator_check: size must be positive");
  CommutatorReport rep;
  if (size < 3) {
    rep.warning = "window of " + std::to_string(size) + " sites has no interior rows; residual reported as 0";
    return rep;
  }
  const int lo = -(size / 2);
  const TruncatedOperators ops({lo, lo + size - 1});
  const double a = alpha_at(spec, t);
  const double b = alpha_at(spec, t_prime);
  const Eigen::MatrixXd h1 = ops.hamiltonian(a);
  const Eigen::MatrixXd h2 = ops.hamiltonian(b);
  const Eigen::MatrixXd diff = (h1 * h2 - h2 * h1) - (a - b) * (ops.Tdag - ops.T);
  rep.residual = diff.middleRows(1, size - 2).cwiseAbs().maxCoeff();
  return rep;
}

double algebra_residual(const TruncatedOperators& ops) {
  const int n = ops.size();
  if (n < 3) return 0.0;
  const auto& T = ops.T;
  const auto& Td = ops.Tdag;
  const auto& N = ops.N;
  const Eigen::MatrixXd r1 = T * Td - Td * T;
  const Eigen::MatrixXd r2 = T * N - N * T - T;
  const Eigen::MatrixXd r3 = Td * N - N * Td + Td;
  double r = 0.0;
  for (const Eigen::MatrixXd* m : {&r1, &r2, &r3}) r = std::max(r, m->middleRows(1, n - 2).cwiseAbs().maxCoeff());
  return r;
}

}  // namespace starkwave
