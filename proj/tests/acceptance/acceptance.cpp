// Acceptance checks, one line per criterion.
//
//   starkwave_acceptance        run all ten
//   starkwave_acceptance 4      run criterion 4 only
//
// Exit status is 0 when every selected criterion passes.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "series_bessel.hpp"
#include "starkwave/caustics.hpp"
#include "starkwave/continuum.hpp"
#include "starkwave/designer.hpp"
#include "starkwave/errors.hpp"
#include "starkwave/invariants.hpp"
#include "starkwave/lattice_oracle.hpp"
#include "starkwave/special_functions.hpp"
#include "cli.hpp"

using namespace starkwave;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

FieldSpec random_smooth_table(std::mt19937& gen, double t_end) {
  std::uniform_real_distribution<double> val(-1.5, 1.5);
  std::vector<double> ts, vs;
  for (int k = 0; k <= 10; ++k) {
    ts.push_back(t_end * k / 10.0);
    vs.push_back(val(gen));
  }
  return FieldSpec::tabulated(ts, vs);
}

FieldSpec random_field(std::mt19937& gen) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_real_distribution<double> when(0.2, 4.0);
  switch (gen() % 4) {
    case 0: return FieldSpec::zero();
    case 1: return FieldSpec::constant(val(gen));
    case 2: return random_smooth_table(gen, 12.0);
    default: {
      const double a = when(gen);
      return random_smooth_table(gen, 12.0).with_impulses({{a, val(gen)}, {a + 1.0, val(gen)}});
    }
  }
}

// 1. Kernel versus direct integration of the lattice equation.
Outcome oracle_matrix() {
  std::mt19937 gen(1);
  const std::vector<FieldSpec> fields{FieldSpec::zero(), FieldSpec::constant(0.5),
                                      FieldSpec::tabulated({0.0, 5.0}, {0.0, 1.5}), random_smooth_table(gen, 5.0)};
  const std::vector<double> times{1.0, 2.5, 5.0};
  const int cases = static_cast<int>(fields.size() * times.size());
  std::vector<double> dev(static_cast<std::size_t>(cases));
  const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < cases; ++c) {
    const FieldSpec& f = fields[static_cast<std::size_t>(c) / times.size()];
    const double t = times[static_cast<std::size_t>(c) % times.size()];
    dev[static_cast<std::size_t>(c)] = compare_kernel_oracle(f, 0, t, 0.0, 100);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double worst = *std::max_element(dev.begin(), dev.end());
  return {worst <= 1e-6 && secs <= 60.0, std::to_string(cases) + " cases on 201 sites, max deviation " + sci(worst) +
                                             " (tol 1e-6), " + sci(secs) + " s (limit 60 s)"};
}

// 2. Unitarity.
Outcome unitarity() {
  std::mt19937 gen(2);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::uniform_int_distribution<int> site(-20, 20);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const FieldSpec f = random_field(gen);
    worst = std::max(worst, unitarity_residual(f, site(gen), time(gen)));
  }
  return {worst <= 1e-10, "20 random cases, max |sum |K|^2 - 1| = " + sci(worst) + " (tol 1e-10)"};
}

// 3. Constant-field amplitude and Bloch revival.
Outcome constant_field() {
  double amp = 0.0, revival = 0.0;
  for (double alpha : {0.3, 1.0, 2.0}) {
    const FieldSpec f = FieldSpec::constant(alpha);
    for (int k = 0; k <= 400; ++k) {
      const double t = 4.0 * pi / alpha * k / 400.0;
      amp = std::max(amp, std::abs(std::abs(amplitude_F(f, t)) - std::abs(std::sin(alpha * t / 2.0)) / (alpha / 2.0)));
    }
    const double period = 2.0 * pi / alpha;
    // pure phase on the diagonal, nothing off it
    for (int n : {-7, 0, 4}) {
      const KernelSlice s = kernel_slice(f, n, {n - 30, n + 30}, period);
      for (int m = n - 30; m <= n + 30; ++m)
        revival = std::max(revival, m == n ? std::abs(std::abs(s.at(m)) - 1.0) : std::abs(s.at(m)));
    }
  }
  return {amp <= 1e-10 && revival <= 1e-8,
          "| |F| - 2|sin(alpha t/2)|/alpha | = " + sci(amp) + " on [0, 4 pi/alpha] (tol 1e-10), revival deviation " +
              sci(revival) + " (tol 1e-8)"};
}

// 4. Recursion identities.
Outcome mm_identities() {
  std::mt19937 gen(4);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::uniform_int_distribution<int> site(-25, 25);
  double rec = 0.0, three = 0.0;
  for (int k = 0; k < 50; ++k) {
    const FieldSpec f = random_field(gen);
    const double t = time(gen);
    const int m = site(gen), n = site(gen);
    rec = std::max(rec, mm_recursion_residual(f, m, n, t));
    three = std::max(three, three_term_residual(f, m, n, t));
  }
  return {rec <= 1e-10 && three <= 1e-10,
          "50 random samples, recursion " + sci(rec) + ", three-term " + sci(three) + " (tol 1e-10)"};
}

// 5. Translation covariance.
Outcome translation() {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::uniform_int_distribution<int> site(-25, 25);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const FieldSpec f = random_field(gen);
    const int m = site(gen), n = site(gen);
    const double t = time(gen);
    for (int d : {-3, 1, 7}) worst = std::max(worst, translation_residual(f, m, n, d, t));
  }
  return {worst <= 1e-13, "50 random samples x shifts {-3, 1, 7}, max residual " + sci(worst) + " (tol 1e-13)"};
}

// 6. Empirical fronts against the light cone 2|F|.
Outcome fronts() {
  struct Case {
    const char* name;
    FieldSpec field;
    double t0, t1;
  };
  const std::vector<Case> cases{
      {"uniform_acceleration(0.2,0.1)", FieldSpec::uniform_acceleration(0.2, 0.1), 0.01, 4.4},
      {"mirror(0.5)", FieldSpec::mirror(0.5), 0.01, 3.99},
      {"freeze_out(0.5)", FieldSpec::freeze_out(0.5), 0.01, 30.0},
      {"constant(0.5)", FieldSpec::constant(0.5), 0.0, 4.0 * pi},
  };
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  int frozen = 0;
  std::ostringstream detail;
  for (const Case& c : cases) {
    std::vector<double> ts;
    for (int k = 0; k <= 200; ++k) ts.push_back(c.t0 + (c.t1 - c.t0) * k / 200.0);
    const IntensityGrid g = intensity_grid(c.field, 0, ts, {-40, 40});
    double dev = 0.0, beyond_skin = 0.0;
    for (const FrontSample& s : extract_front(g, 1e-3)) {
      const double cone = 2.0 * s.rho;
      dev = std::max(dev, std::abs(s.front - cone));
      beyond_skin = std::max(beyond_skin, s.front - cone - 1.2 * std::cbrt(cone));
      if (c.t1 == 30.0 && s.t >= 10.0) frozen = std::max(frozen, s.front);
    }
    pass = pass && dev <= 2.0;
    detail << c.name << " max |front - 2|F|| = " << dev << " (excess over Airy skin " << beyond_skin << "); ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && frozen <= 2 && secs <= 120.0;
  detail << "freeze-out front for t >= 10: " << frozen << " (limit 2); tol 2 sites; " << sci(secs) << " s";
  return {pass, detail.str()};
}

// 7. Design round trips.
Outcome roundtrips() {
  const RoundtripReport trig = roundtrip_check(Trajectory::trigonometric(0.8), 1e-3, pi / 0.8 - 1e-3, 1e-6);
  const RoundtripReport ua = roundtrip_check(Trajectory::uniform_acceleration(0.2, 0.1), 1e-2, 4.0, 1e-6);
  const RoundtripReport fo = roundtrip_check(Trajectory::freeze_out(0.5), 1e-2, 20.0, 1e-6);
  const std::vector<double> grid = default_design_grid(1e-3, pi / 0.8 - 1e-3);
  const FieldSpec designed = design_field(Trajectory::trigonometric(0.8), grid);
  double constant = 0.0;
  for (double t : grid) constant = std::max(constant, std::abs(alpha_at(designed, t) - 0.8));
  return {trig.passed() && ua.passed() && fo.passed() && constant <= 1e-10,
          "residuals trig " + sci(trig.residual) + ", UA " + sci(ua.residual) + ", freeze-out " + sci(fo.residual) +
              " (tol 1e-6); trig field deviation from 0.8 " + sci(constant) + " (tol 1e-10)"};
}

// 8. Superluminal targets are refused by the library and the CLI.
Outcome superluminal() {
  int refused = 0, total = 0;
  auto expect = [&](const std::function<void()>& fn) {
    ++total;
    try {
      fn();
    } catch (const SuperluminalError&) {
      ++refused;
    }
  };
  expect([] { design_field(Trajectory::uniform_acceleration(0.2, 0.1), default_design_grid(0.01, 4.5)); });
  expect([] {
    design_field(Trajectory::from_samples(0.0, 0.5, {0.5, 1.1, 1.7, 2.3, 2.9}), default_design_grid(0.0, 2.0, 50));
  });
  expect([] {
    Trajectory t = Trajectory::mirror(0.5);
    t.corners[0].rho_dot_after = -1.0;
    design_field(t, default_design_grid(0.01, 3.9));
  });
  const char* argv[] = {"starkwave", "design", "--trajectory", STARKWAVE_GOLDEN_DIR "/superluminal_trajectory.json",
                        "--t1", "2"};
  std::ostringstream out, err;
  const int code = cli::main_entry(6, argv, out, err);
  return {refused == total && code == 3, std::to_string(refused) + "/" + std::to_string(total) +
                                             " library calls refused, CLI exit code " + std::to_string(code) +
                                             " (expected 3)"};
}

// 9. Continuum limit.
Outcome continuum() {
  double ident = 0.0;
  for (auto [E0, tau, x, xp] : {std::array{1.0, 1.0, 1.0, 1.0}, {2.0, 0.5, 1.0, -1.0}, {-0.7, 2.3, 0.4, 1.9}}) {
    const IdentityResiduals r = constant_field_identities(E0, tau, 1.0, 1.0, x, xp);
    ident = std::max({ident, r.quadratic, r.linear});
  }
  ContinuumParams p;
  p.E = [](double) { return 1.0; };
  const PdeResiduals coarse = mm_pde_check(p, 0.6, -0.4, 1.0, 1e-3);
  const PdeResiduals fine = mm_pde_check(p, 0.6, -0.4, 1.0, 5e-4);
  const double order = std::log2(coarse.translation / fine.translation);
  const double order_disp = std::log2(coarse.displacement / fine.displacement);

  bool monotone = true;
  std::ostringstream orders;
  const std::vector<double> as{0.25, 0.125, 0.0625, 0.03125, 0.015625};
  for (double E0 : {0.0, 0.5}) {
    ContinuumParams q;
    q.E = [E0](double) { return E0; };
    const ConvergenceStudy st = lattice_to_continuum_convergence(q, as, 0.0, 0.5, 1.0);
    monotone = monotone && st.smeared_monotone();
    orders << " E0=" << E0 << ": smeared " << sci(st.points.front().smeared_error) << " -> "
           << sci(st.points.back().smeared_error) << (st.smeared_monotone() ? " monotone" : " NOT monotone") << ";";
  }
  const bool pass = ident <= 1e-12 && std::abs(order - 2.0) <= 0.1 && std::abs(order_disp - 2.0) <= 0.1 && monotone;
  return {pass, "identities " + sci(ident) + " (tol 1e-12), finite-difference orders " + sci(order) + " and " +
                    sci(order_disp) + " (want 2);" + orders.str()};
}

// 10. Bessel accuracy and normalisation.
Outcome bessel() {
  double grid = 0.0;
  for (int k = 0; k <= 300; ++k) {
    const double z = 0.1 * k;
    const BesselRow r = bessel_j_row(-30, 30, z);
    for (int n = -30; n <= 30; ++n) grid = std::max(grid, std::abs(r[n] - testing_support::series_bessel_j(n, z)));
  }
  std::mt19937 gen(10);
  std::uniform_real_distribution<double> arg(0.0, 500.0);
  double norm = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double z = arg(gen);
    const int reach = static_cast<int>(z) + 60;
    const BesselRow r = bessel_j_row(-reach, reach, z);
    double s = 0.0;
    for (double v : r.values) s += v * v;
    norm = std::max(norm, std::abs(s - 1.0));
  }
  return {grid <= 1e-12 && norm <= 1e-12,
          "series grid max error " + sci(grid) + ", normalisation " + sci(norm) + " (tol 1e-12)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{oracle_matrix, unitarity,    constant_field, mm_identities,
                                                       translation,   fronts,       roundtrips,     superluminal,
                                                       continuum,     bessel};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10 ...]\n", argv[0]);
      return 2;
    }
    selected.push_back(k);
  }
  if (selected.empty())
    for (int k = 1; k <= 10; ++k) selected.push_back(k);

  int failed = 0;
  for (int k : selected) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s  %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
