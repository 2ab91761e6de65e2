#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "starkwave/errors.hpp"
#include "starkwave/field.hpp"

using namespace starkwave;
using std::numbers::pi;

namespace {

// Composite trapezoid on a uniform grid of n panels for both phase integrals.
PhaseIntegrals trapezoid(const FieldSpec& spec, double t, int n) {
  const double h = t / n;
  double f = 0.0;
  std::complex<double> F = 0.5 * h;  // exp(-i f(0)) = 1
  double prev = alpha_at(spec, 0.0);
  for (int k = 1; k <= n; ++k) {
    const double a = alpha_at(spec, k == n ? t : k * h);
    f += 0.5 * h * (prev + a);
    prev = a;
    F += (k == n ? 0.5 : 1.0) * h * std::polar(1.0, -f);
  }
  return {t, 0.0, f, F, 0.0};
}

}  // namespace

TEST_CASE("alpha_at on the standard fields") {
  CHECK(alpha_at(FieldSpec::constant(0.5), 3.0) == 0.5);
  CHECK(alpha_at(FieldSpec::zero(), 1e6) == 0.0);
  CHECK(alpha_at(FieldSpec::uniform_acceleration(0.2, 0.1), 2.0) == doctest::Approx(1.2124).epsilon(1e-4));
  CHECK(alpha_at(FieldSpec::freeze_out(0.5), 60.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(alpha_at(FieldSpec::uniform_acceleration(0.2, 0.1), 4.5), DomainError);
  CHECK_THROWS_AS(alpha_at(FieldSpec::uniform_acceleration(0.2, 0.1), 0.0), DomainError);
}

TEST_CASE("tabulated fields interpolate linearly and refuse extrapolation") {
  const FieldSpec tab = FieldSpec::tabulated({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
  CHECK(alpha_at(tab, 0.5) == doctest::Approx(1.0));
  CHECK(alpha_at(tab, 2.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(alpha_at(tab, 3.5), DomainError);
  CHECK_THROWS_AS(phase_integrals(tab, 4.0), DomainError);
  CHECK_THROWS_AS(FieldSpec::tabulated({0.0, 0.0}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(FieldSpec::tabulated({0.0}, {1.0}), DomainError);
}

TEST_CASE("phase_f examples") {
  CHECK(phase_f(FieldSpec::constant(0.5), 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  const FieldSpec kicked = FieldSpec::zero().with_impulses({{1.0, -2.1}});
  CHECK(phase_f(kicked, 2.0) == doctest::Approx(-2.1).epsilon(1e-12));
  CHECK(phase_f(FieldSpec::constant(1.0), pi) == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("impulses are right-continuous") {
  const FieldSpec kicked = FieldSpec::zero().with_impulses({{1.0, 0.7}});
  CHECK(phase_f(kicked, std::nextafter(1.0, 0.0)) == 0.0);
  CHECK(phase_f(kicked, 1.0) == doctest::Approx(0.7));
  // F stays continuous across the kick.
  const double eps = 1e-7;
  CHECK(std::abs(amplitude_F(kicked, 1.0 + eps) - amplitude_F(kicked, 1.0 - eps)) <= 2.0 * eps + 1e-12);
  CHECK_THROWS_AS(FieldSpec::zero().with_impulses({{1.0, 0.1}, {0.5, 0.1}}), DomainError);
  CHECK_THROWS_AS(FieldSpec::zero().with_impulses({{0.0, 0.1}}), DomainError);
}

TEST_CASE("amplitude_F examples") {
  CHECK(std::abs(amplitude_F(FieldSpec::zero(), 3.0) - 3.0) < 1e-12);
  CHECK(std::abs(amplitude_F(FieldSpec::constant(1.0), pi) - std::complex<double>(0.0, -2.0)) < 1e-10);
  CHECK(std::abs(amplitude_F(FieldSpec::constant(1.0), 2.0 * pi)) < 1e-10);
  const PhaseIntegrals origin = phase_integrals(FieldSpec::constant(0.4), 0.0);
  CHECK(origin.f == 0.0);
  CHECK(origin.F == std::complex<double>(0.0, 0.0));
}

TEST_CASE("constant field closed form") {
  for (double alpha : {0.3, 1.0, 2.0}) {
    const FieldSpec spec = FieldSpec::constant(alpha);
    for (double t = 0.1; t < 20.0; t += 0.37) {
      const double expected = std::abs(std::sin(alpha * t / 2.0)) / (alpha / 2.0);
      CHECK(std::abs(std::abs(amplitude_F(spec, t)) - expected) < 1e-10);
    }
  }
}

TEST_CASE("|dF/dt| = 1 and |F| <= t") {
  const FieldSpec spec = FieldSpec::tabulated({0.0, 2.0, 5.0, 9.0}, {0.3, -1.0, 2.5, 0.0});
  const double h = 1e-5;
  for (double t = 0.2; t < 8.8; t += 0.61) {
    const double rate = std::abs(amplitude_F(spec, t + h) - amplitude_F(spec, t - h)) / (2.0 * h);
    CHECK(rate == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(amplitude_F(spec, t)) <= t + 1e-12);
  }
}

TEST_CASE("tabulated integrals match a refined trapezoid") {
  const FieldSpec spec = FieldSpec::tabulated({0.0, 1.0, 2.5, 4.0, 6.0}, {0.0, 1.5, -0.5, 0.8, 0.2});
  for (double t : {1.0, 2.5, 3.3, 6.0}) {
    const PhaseIntegrals got = phase_integrals(spec, t);
    const PhaseIntegrals ref = trapezoid(spec, t, 600000);
    CHECK(std::abs(got.f - ref.f) < 1e-8);
    CHECK(std::abs(got.F - ref.F) < 1e-8);
  }
}

TEST_CASE("additivity over intermediate times") {
  const FieldSpec spec = FieldSpec::tabulated({0.0, 4.0}, {0.0, 1.2}).with_impulses({{1.5, 0.4}});
  const double t0 = 0.0, t1 = 2.2, t2 = 3.9;
  const PhaseIntegrals a = phase_integrals(spec, t1, t0);
  const PhaseIntegrals b = phase_integrals(spec, t2, t1);
  const PhaseIntegrals c = phase_integrals(spec, t2, t0);
  CHECK(std::abs(a.f + b.f - c.f) < 1e-12);
  CHECK(std::abs(a.F + std::polar(1.0, -a.f) * b.F - c.F) < 1e-10);
}

TEST_CASE("sweep agrees with independent evaluations") {
  const FieldSpec spec = FieldSpec::constant(0.7).with_impulses({{0.9, 1.1}, {2.0, -0.3}});
  const std::vector<double> times{0.0, 0.5, 0.9, 1.4, 2.0, 3.0};
  const auto sweep = phase_integrals_sweep(spec, times);
  REQUIRE(sweep.size() == times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const PhaseIntegrals one = phase_integrals(spec, times[i]);
    CHECK(std::abs(sweep[i].f - one.f) < 1e-12);
    CHECK(std::abs(sweep[i].F - one.F) < 1e-10);
  }
}

TEST_CASE("anchored fields start from their anchor data") {
  const FieldSpec fo = FieldSpec::freeze_out(0.5, 0.1);
  REQUIRE(fo.anchor());
  const PhaseIntegrals at = phase_integrals(fo, 0.1);
  CHECK(at.f == doctest::Approx(fo.anchor()->f));
  CHECK(std::abs(at.F - fo.anchor()->F) < 1e-15);
  CHECK(std::abs(at.F) == doctest::Approx(1.0 - std::exp(-0.05)));
  CHECK_THROWS_AS(phase_integrals(fo, 0.05), DomainError);
  // Far out the front freezes at 1.
  CHECK(std::abs(amplitude_F(fo, 40.0)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("non-integrable field reports a quadrature failure") {
  const FieldSpec bad = FieldSpec::sampled([](double t) { return 1.0 / ((t - 1.0) * (t - 1.0)); }, {0.0, 2.0});
  CHECK_THROWS_AS(phase_integrals(bad, 2.0), QuadratureError);
}

TEST_CASE("domain and description") {
  CHECK(FieldSpec::constant(0.5).describe() == "constant(0.5)");
  const FieldDomain d = FieldSpec::uniform_acceleration(0.2, 0.1).domain();
  CHECK(d.contains(1.0));
  CHECK_FALSE(d.contains(4.5));
  CHECK(FieldSpec::mirror(0.5).impulses().size() == 1);
  CHECK(FieldSpec::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}).kinks() == std::vector<double>{1.0});
}
