// Randomised checks of the kernel identities. Seeds are fixed so failures
// reproduce.
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "starkwave/invariants.hpp"
#include "starkwave/propagator.hpp"
#include "starkwave/special_functions.hpp"

using namespace starkwave;

namespace {

FieldSpec random_field(std::mt19937& gen) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_int_distribution<int> kind(0, 3);
  switch (kind(gen)) {
    case 0:
      return FieldSpec::zero();
    case 1:
      return FieldSpec::constant(val(gen));
    case 2: {
      std::vector<double> ts, vs;
      for (int k = 0; k <= 6; ++k) {
        ts.push_back(2.0 * k);
        vs.push_back(val(gen));
      }
      return FieldSpec::tabulated(ts, vs);
    }
    default: {
      std::uniform_real_distribution<double> when(0.1, 5.0);
      double a = when(gen), b = when(gen);
      if (a > b) std::swap(a, b);
      if (b - a < 1e-3) b = a + 0.5;
      return FieldSpec::constant(val(gen)).with_impulses({{a, val(gen)}, {b, val(gen)}});
    }
  }
}

}  // namespace

TEST_CASE("random unitarity, recursion and translation") {
  std::mt19937 gen(20241);
  std::uniform_real_distribution<double> time(0.0, 10.0);
  std::uniform_int_distribution<int> site(-15, 15);
  for (int trial = 0; trial < 60; ++trial) {
    const FieldSpec spec = random_field(gen);
    const double t = time(gen);
    const int m = site(gen), n = site(gen), d = site(gen);
    INFO(spec.describe() << " t=" << t << " m=" << m << " n=" << n);
    CHECK(unitarity_residual(spec, n, t) <= 1e-10);
    CHECK(mm_recursion_residual(spec, m, n, t) <= 1e-10);
    CHECK(three_term_residual(spec, m, n, t) <= 1e-10);
    CHECK(translation_residual(spec, m, n, d, t) <= 1e-13);
  }
}

TEST_CASE("random speed bound and additivity") {
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> time(0.0, 12.0);
  for (int trial = 0; trial < 40; ++trial) {
    const FieldSpec spec = random_field(gen);
    double t1 = time(gen), t2 = time(gen);
    if (t1 > t2) std::swap(t1, t2);
    const PhaseIntegrals a = phase_integrals(spec, t1);
    const PhaseIntegrals b = phase_integrals(spec, t2, t1);
    const PhaseIntegrals c = phase_integrals(spec, t2);
    CHECK(std::abs(c.F) <= t2 + 1e-12);
    CHECK(std::abs(b.F) <= t2 - t1 + 1e-12);
    CHECK(std::abs(a.F + std::polar(1.0, -a.f) * b.F - c.F) <= 1e-9);
  }
}

TEST_CASE("random semigroup") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> time(0.0, 6.0);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldSpec spec = random_field(gen);
    std::vector<double> ts{time(gen), time(gen), time(gen)};
    std::sort(ts.begin(), ts.end());
    CHECK(semigroup_residual(spec, 0, ts[0], ts[1], ts[2]) <= 1e-8);
  }
}

TEST_CASE("random Bessel normalisation") {
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> arg(0.0, 500.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double z = arg(gen);
    const int reach = static_cast<int>(z) + 60;
    const BesselRow r = bessel_j_row(-reach, reach, z);
    double s = 0.0;
    for (double v : r.values) s += v * v;
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}
