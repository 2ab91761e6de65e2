#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace starkwave {

/// A Dirac term weight * delta(t - time) in the driving field.
struct Impulse {
  double time = 0.0;
  double weight = 0.0;

  friend bool operator==(const Impulse&, const Impulse&) = default;
};

/// Initial data (f, F) at a time t > 0 for fields whose smooth part is not
/// integrable at t = 0. Integrals "from the origin" start here instead.
struct Anchor {
  double time = 0.0;
  double f = 0.0;
  std::complex<double> F{0.0, 0.0};

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// Default anchor time of the singular closed-form fields.
inline constexpr double kDefaultAnchorTime = 1.0e-2;

namespace smooth {
struct Zero {};
struct Constant {
  double alpha = 0.0;
};
/// Piecewise-linear interpolation between strictly increasing knots.
struct Tabulated {
  std::vector<double> times;
  std::vector<double> values;
};
/// Front rho = a t^2 / 2 + v t.
struct UniformAcceleration {
  double a = 0.0;
  double v = 0.0;
};
/// Front rho = 1 - |v t - 1|, reflected at t = 1 / v.
struct Mirror {
  double v = 0.0;
};
/// Front rho = 1 - exp(-omega t).
struct FreezeOut {
  double omega = 0.0;
};
/// Arbitrary callable, defined on [grid.front(), grid.back()]. The grid is
/// used when the field is exported as a table.
struct Sampled {
  std::function<double(double)> alpha;
  std::vector<double> grid;
};
}  // namespace smooth

using SmoothField = std::variant<smooth::Zero, smooth::Constant, smooth::Tabulated,
                                 smooth::UniformAcceleration, smooth::Mirror, smooth::FreezeOut,
                                 smooth::Sampled>;

/// Interval on which the smooth part of a field may be evaluated.
struct FieldDomain {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double t) const;
};

/// Immutable description of the driving field alpha(t): a smooth part plus
/// a list of impulses, optionally anchored away from a singular origin.
///
/// At an impulse time the phase f(t) is right-continuous: the step is
/// already included in f(time).
class FieldSpec {
 public:
  FieldSpec() = default;

  static FieldSpec zero();
  static FieldSpec constant(double alpha);
  static FieldSpec tabulated(std::vector<double> times, std::vector<double> values);
  /// The closed-form designed fields are anchored at `anchor_time` with the
  /// consistent initial data of their target trajectory.
  static FieldSpec uniform_acceleration(double a, double v, double anchor_time = kDefaultAnchorTime);
  /// Includes the reflection impulse at t = 1 / v.
  static FieldSpec mirror(double v, double anchor_time = kDefaultAnchorTime);
  static FieldSpec freeze_out(double omega, double anchor_time = kDefaultAnchorTime);
  static FieldSpec sampled(std::function<double(double)> alpha, std::vector<double> grid);

  /// Copies with replaced impulses / anchor. Impulse times must be strictly
  /// increasing and positive.
  FieldSpec with_impulses(std::vector<Impulse> impulses) const;
  FieldSpec with_anchor(std::optional<Anchor> anchor) const;

  const SmoothField& smooth() const { return smooth_; }
  std::span<const Impulse> impulses() const { return impulses_; }
  const std::optional<Anchor>& anchor() const { return anchor_; }

  FieldDomain domain() const;
  /// Interior points where the smooth part has a kink (table knots, the
  /// mirror reflection time). Impulse times are not included.
  std::vector<double> kinks() const;
  /// Short human-readable description, e.g. "constant(0.5)".
  std::string describe() const;

 private:
  explicit FieldSpec(SmoothField smooth) : smooth_(std::move(smooth)) {}

  SmoothField smooth_ = smooth::Zero{};
  std::vector<Impulse> impulses_;
  std::optional<Anchor> anchor_;
};

/// The pair (f, F) at time t, integrated from t0:
///   f = int_{t0}^{t} alpha,   F = int_{t0}^{t} exp(-i f(tau)) dtau.
struct PhaseIntegrals {
  double t = 0.0;
  double t0 = 0.0;
  double f = 0.0;
  std::complex<double> F{0.0, 0.0};
  /// Accumulated quadrature error estimate for F.
  double tol = 0.0;
};

struct QuadratureTolerance {
  double f = 1.0e-12;
  double F = 1.0e-10;
};

/// Smooth part of alpha at t; impulses are never folded in.
/// Throws DomainError outside FieldSpec::domain().
double alpha_at(const FieldSpec& spec, double t);

/// Phase integrals from t0 to t (t >= t0).
///
/// With t0 == 0 and an anchored field, integration starts from the anchor
/// data instead (times in (0, anchor.time) are then rejected).
PhaseIntegrals phase_integrals(const FieldSpec& spec, double t, double t0 = 0.0,
                               QuadratureTolerance tol = {});

/// Phase integrals at increasing times, accumulated sample to sample.
std::vector<PhaseIntegrals> phase_integrals_sweep(const FieldSpec& spec, std::span<const double> times,
                                                  double t0 = 0.0, QuadratureTolerance tol = {});

double phase_f(const FieldSpec& spec, double t, double t0 = 0.0);
std::complex<double> amplitude_F(const FieldSpec& spec, double t, double t0 = 0.0);

}  // namespace starkwave
