#include <cmath>
#include <limits>
#include <random>

#include <boost/math/special_functions/bessel.hpp>

#include "doctest.h"
#include "series_bessel.hpp"
#include "starkwave/errors.hpp"
#include "starkwave/special_functions.hpp"

using namespace starkwave;
using testing_support::series_bessel_j;

TEST_CASE("bessel_j reference values") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK(bessel_j(-4, 0.0) == 0.0);
  CHECK(bessel_j(1, 2.0) == doctest::Approx(0.5767248078).epsilon(1e-10));
  CHECK(bessel_j(0, 2.0) == doctest::Approx(0.2238907791).epsilon(1e-10));
  CHECK(std::abs(bessel_j(7, 20.0) - boost::math::cyl_bessel_j(7, 20.0)) < 1e-13);
}

TEST_CASE("bessel_j rejects bad arguments") {
  CHECK_THROWS_AS(bessel_j(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(bessel_j(0, std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(bessel_j(0, 2.0e4), DomainError);
  CHECK_THROWS_AS(bessel_j_row(2, 1, 1.0), DomainError);
}

TEST_CASE("parity J_{-n} = (-1)^n J_n holds exactly") {
  for (double z : {0.3, 2.0, 17.5, 140.0})
    for (int n = 0; n <= 40; ++n) CHECK(bessel_j(-n, z) == ((n % 2) ? -bessel_j(n, z) : bessel_j(n, z)));
}

TEST_CASE("row at z = 0 is one-hot") {
  const BesselRow r = bessel_j_row(-2, 2, 0.0);
  REQUIRE(r.size() == 5);
  for (int k = -2; k <= 2; ++k) CHECK(r[k] == (k == 0 ? 1.0 : 0.0));
}

TEST_CASE("row entries agree with single evaluations") {
  const BesselRow r = bessel_j_row(-1, 1, 2.0);
  CHECK(r[-1] == doctest::Approx(-0.5767248078).epsilon(1e-10));
  CHECK(r[0] == doctest::Approx(0.2238907791).epsilon(1e-10));
  CHECK(r[1] == doctest::Approx(0.5767248078).epsilon(1e-10));
  CHECK_THROWS_AS(r.at(2), std::out_of_range);

  for (double z : {0.5, 9.0, 63.0, 310.0}) {
    const BesselRow wide = bessel_j_row(-80, 80, z);
    for (int k = -80; k <= 80; k += 7) CHECK(std::abs(wide[k] - bessel_j(k, z)) < 1e-13);
  }
}

TEST_CASE("normalisation of a wide row at z = 100") {
  const BesselRow r = bessel_j_row(-200, 200, 100.0);
  double s = 0.0;
  for (double v : r.values) s += v * v;
  CHECK(std::abs(s - 1.0) < 1e-12);
}

TEST_CASE("three-term recurrence") {
  for (double z : {0.7, 5.0, 42.0, 480.0}) {
    const BesselRow r = bessel_j_row(-60, 60, z);
    for (int k = -59; k <= 59; ++k) CHECK(std::abs(r[k - 1] + r[k + 1] - 2.0 * k / z * r[k]) < 1e-12);
  }
}

TEST_CASE("agreement with the multiprecision series on a grid") {
  double worst = 0.0;
  for (int k = 0; k <= 120; ++k) {
    const double z = 0.25 * k;
    const BesselRow r = bessel_j_row(-30, 30, z);
    for (int n = -30; n <= 30; ++n) worst = std::max(worst, std::abs(r[n] - series_bessel_j(n, z)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("agreement with Boost for large arguments") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> zd(30.0, 500.0);
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    const double z = zd(gen);
    const int top = static_cast<int>(z) + 60;
    const BesselRow r = bessel_j_row(0, top, z);
    for (int n = 0; n <= top; n += 3) worst = std::max(worst, std::abs(r[n] - boost::math::cyl_bessel_j(n, z)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("meissel_asymptotic") {
  const std::complex<double> m = meissel_asymptotic(10, 1000.0);
  CHECK(std::abs(m) == doctest::Approx(0.01262).epsilon(1e-3));
  // One saddle of two: the real-axis Bessel value is twice the real part.
  const double j = bessel_j(10, 1000.0);
  CHECK(std::abs(2.0 * m.real() - j) < 0.02 * std::abs(j));
  CHECK_THROWS_AS(meissel_asymptotic(10, 50.0), DomainError);
  CHECK_THROWS_AS(meissel_asymptotic(5, 1000.0), DomainError);
}
