#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "starkwave/caustics.hpp"
#include "starkwave/continuum.hpp"
#include "starkwave/designer.hpp"
#include "starkwave/errors.hpp"
#include "starkwave/invariants.hpp"
#include "starkwave/io.hpp"

namespace starkwave::cli {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::ostream& os) : os_(os) {}
  Csv& cell(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  Csv& cell(double x) { return cell(fmt(x)); }
  Csv& cell(int x) { return cell(std::to_string(x)); }
  void end() {
    os_ << '\n';
    first_ = true;
  }

 private:
  std::ostream& os_;
  bool first_ = true;
};

// Destination stream: the output file when one is configured.
class Sink {
 public:
  Sink(const std::filesystem::path& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw InputError("cannot write " + path.string());
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int samples_or(const RunConfig& c, int fallback) { return c.t_range.samples.value_or(fallback); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = (k == n - 1) ? b : a + (b - a) * k / (n - 1);
  return v;
}

FieldSpec field_of(const RunConfig& c) {
  if (c.field_file.empty()) throw InputError("this command needs --field <file>");
  return load_field(c.field_file);
}

Trajectory trajectory_of(const RunConfig& c) {
  if (c.trajectory_file.empty()) throw InputError("this command needs --trajectory <file>");
  return load_trajectory(c.trajectory_file);
}

LatticeState state_of(const RunConfig& c) {
  if (c.state_file.empty()) return LatticeState::delta(c.source);
  std::ifstream in(c.state_file);
  if (!in) throw InputError("cannot read " + c.state_file.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    LatticeState s;
    s.offset = j.at("offset").get<int>();
    for (const auto& a : j.at("amplitudes")) s.amplitudes.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    if (s.amplitudes.empty()) throw InputError("state has no amplitudes");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(c.state_file.string() + ": expected {\"offset\": n, \"amplitudes\": [[re, im], ...]}: " +
                     e.what());
  }
}

void write_amplitudes(std::ostream& os, const LatticeState& s) {
  Csv csv(os);
  csv.cell("m").cell("re").cell("im").cell("abs2").end();
  for (int m = s.window().lo; m <= s.window().hi; ++m) {
    const Complex a = s.at(m);
    csv.cell(m).cell(a.real()).cell(a.imag()).cell(std::norm(a)).end();
  }
}

void write_pgm(const std::filesystem::path& path, const IntensityGrid& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << "P2\n" << g.window.size() << ' ' << g.rows() << "\n65535\n";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    const auto row = g.row(r);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const double db = std::log10(std::max(row[k], 1.0e-12));  // in [-12, 0]
      const long level = std::lround((db + 12.0) / 12.0 * 65535.0);
      out << std::clamp(level, 0L, 65535L) << (k + 1 == row.size() ? '\n' : ' ');
    }
  }
}

int cmd_kernel(const RunConfig& c, std::ostream& out) {
  const FieldSpec spec = field_of(c);
  const KernelSlice s = kernel_slice(spec, c.source, c.window, c.t_range.t1, c.t_range.t0);
  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("m").cell("re_K").cell("im_K").cell("abs2_K").end();
  for (int m = c.window.lo; m <= c.window.hi; ++m) {
    const Complex k = s.at(m);
    csv.cell(m).cell(k.real()).cell(k.imag()).cell(std::norm(k)).end();
  }
  return kOk;
}

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FieldSpec spec = field_of(c);
  const LatticeState in = state_of(c);
  const LatticeState s = evolve_state(spec, in, c.t_range.t1, c.t_range.t0, c.margin);
  Sink sink(c.output, out);
  write_amplitudes(sink.get(), s);
  err << "norm in " << fmt(in.norm()) << ", norm out " << fmt(s.norm()) << '\n';
  return kOk;
}

int cmd_grid(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FieldSpec spec = field_of(c);
  const std::vector<double> ts = linspace(c.t_range.t0, c.t_range.t1, samples_or(c, 101));
  const IntensityGrid g = intensity_grid(spec, c.source, ts, c.window);

  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("t").cell("abs_F");
  for (int m = c.window.lo; m <= c.window.hi; ++m) csv.cell("I" + std::to_string(m));
  csv.end();
  double worst = 0.0;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    csv.cell(g.times[r]).cell(g.rho[r]);
    double sum = 0.0;
    for (double v : g.row(r)) {
      csv.cell(v);
      sum += v;
    }
    csv.end();
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  if (!c.pgm_output.empty()) write_pgm(c.pgm_output, g);

  err << "max |row sum - 1| = " << fmt(worst) << '\n';
  if (worst > c.tol.row_sum) {
    err << "row sums deviate beyond " << fmt(c.tol.row_sum) << "; widen --window\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_cone(const RunConfig& c, std::ostream& out) {
  const FieldSpec spec = field_of(c);
  const std::vector<double> ts = linspace(c.t_range.t0, c.t_range.t1, samples_or(c, 101));
  const IntensityGrid g = intensity_grid(spec, c.source, ts, c.window);
  const std::vector<FrontSample> fronts = extract_front(g, c.tol.threshold);
  std::map<double, int> front_at;
  for (const FrontSample& f : fronts) front_at[f.t] = f.front;

  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("t").cell("abs_F").cell("cone_left").cell("cone_right").cell("front").end();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    const double rho = g.rho[r];
    csv.cell(g.times[r]).cell(rho).cell(0.0 - 2.0 * rho).cell(2.0 * rho);
    const auto it = front_at.find(g.times[r]);
    csv.cell(it == front_at.end() ? std::string("nan") : std::to_string(it->second)).end();
  }
  return kOk;
}

int cmd_caustics(const RunConfig& c, std::ostream& out) {
  const FieldSpec spec = field_of(c);
  const std::vector<double> ts = linspace(c.t_range.t0, c.t_range.t1, samples_or(c, 101));
  const std::vector<CausticCurve> curves = caustic_curves(spec, ts, c.q_list);
  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("q").cell("sign").cell("t").cell("nu").cell("abs_F").end();
  for (const CausticCurve& cc : curves)
    for (const CurvePoint& p : cc.points) csv.cell(cc.branch).cell(cc.sign).cell(p.t).cell(p.nu).cell(p.rho).end();
  return kOk;
}

int cmd_design(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Trajectory traj = trajectory_of(c);
  const double start = std::max(c.t_range.t0, c.eps);
  const std::vector<double> grid = default_design_grid(start, c.t_range.t1, samples_or(c, 2001));
  const FieldSpec spec = design_field(traj, grid);
  Sink sink(c.output, out);
  sink.get() << field_to_json(spec).dump(2) << '\n';
  err << "designed " << traj.label << " on [" << fmt(grid.front()) << ", " << fmt(grid.back()) << "], "
      << grid.size() << " points, " << spec.impulses().size() << " impulse(s); alpha(t_end) = "
      << fmt(alpha_at(spec, grid.back())) << '\n';
  return kOk;
}

int cmd_roundtrip(const RunConfig& c, std::ostream& out) {
  const Trajectory traj = trajectory_of(c);
  const RoundtripReport rep = roundtrip_check(traj, c.eps, c.t_range.t1, c.tol.roundtrip);
  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("trajectory").cell("eps").cell("t_max").cell("residual").cell("tolerance").cell("status").end();
  csv.cell(traj.label.find(',') == std::string::npos ? traj.label : "\"" + traj.label + "\"")
      .cell(c.eps)
      .cell(c.t_range.t1)
      .cell(rep.residual)
      .cell(rep.tol)
      .cell(rep.passed() ? "pass" : "FAIL")
      .end();
  return rep.passed() ? kOk : kValidationFailure;
}

int cmd_validate(const RunConfig& c, std::ostream& out) {
  const FieldSpec spec = c.field_file.empty() ? FieldSpec::zero() : load_field(c.field_file);
  SuiteOptions opt;
  opt.t0 = c.t_range.t0;
  opt.t1 = c.t_range.t1;
  opt.samples = samples_or(c, 5);
  opt.unitarity_tol = c.tol.unitarity;
  opt.recursion_tol = c.tol.recursion;
  opt.translation_tol = c.tol.translation;
  opt.semigroup_tol = c.tol.semigroup;
  opt.oracle_tol = c.tol.oracle;
  const std::vector<SuiteEntry> suite = invariant_suite(spec, opt);

  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("check").cell("residual").cell("tolerance").cell("status").end();
  bool ok = true;
  for (const SuiteEntry& e : suite) {
    csv.cell(e.name).cell(e.residual).cell(e.tolerance).cell(e.passed() ? "pass" : "FAIL").end();
    ok = ok && e.passed();
  }
  return ok ? kOk : kValidationFailure;
}

int cmd_continuum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ContinuumOptions& o = c.continuum;
  ContinuumParams p;
  p.mu = o.mu;
  p.hbar = o.hbar;
  const double E0 = o.E0;
  p.E = [E0](double) { return E0; };
  if (o.halvings < 1) throw InputError("--halvings must be at least 1");
  std::vector<double> as;
  for (int k = 0; k <= o.halvings; ++k) as.push_back(o.a_max / std::pow(2.0, k));
  const ConvergenceStudy st = lattice_to_continuum_convergence(p, as, o.x, o.x_prime, o.tau, o.smear);

  Sink sink(c.output, out);
  Csv csv(sink.get());
  csv.cell("a").cell("source").cell("destination").cell("z").cell("meissel_regime").cell("pointwise_error")
      .cell("smeared_error").end();
  for (const ConvergencePoint& pt : st.points)
    csv.cell(pt.a).cell(pt.source).cell(pt.destination).cell(pt.z).cell(pt.meissel_regime ? 1 : 0)
        .cell(pt.pointwise_error).cell(pt.smeared_error).end();

  const IdentityResiduals id = constant_field_identities(E0, o.tau, o.mu, o.hbar, o.x, o.x_prime);
  err << "smeared order " << fmt(st.smeared_order()) << (st.smeared_monotone() ? ", monotone" : ", NOT monotone")
      << "; constant-field identity residuals " << fmt(id.quadratic) << ' ' << fmt(id.linear) << '\n';
  return st.smeared_monotone() ? kOk : kValidationFailure;
}

SiteWindow parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InputError("--window expects lo:hi, got \"" + s + "\"");
  try {
    std::size_t used = 0;
    const int lo = std::stoi(s.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(s);
    const std::string rest = s.substr(colon + 1);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("--window expects integers lo:hi, got \"" + s + "\"");
  }
}

}  // namespace

void validate_config(const RunConfig& c) {
  const TimeRange& r = c.t_range;
  if (!std::isfinite(r.t0) || !std::isfinite(r.t1) || r.t0 < 0.0 || !(r.t1 > r.t0))
    throw InputError("time range must satisfy t1 > t0 >= 0");
  if (r.samples && *r.samples < 2) throw InputError("--samples must be at least 2");
  if (c.window.hi < c.window.lo) throw InputError("--window must be non-empty (lo <= hi)");
  if (c.margin < kMinWindowMargin) throw InputError("--margin must be at least " + std::to_string(kMinWindowMargin));
  if (!(c.eps > 0.0)) throw InputError("--eps must be positive");
  if (!(c.tol.threshold > 0.0 && c.tol.threshold < 1.0)) throw InputError("--threshold must lie in (0, 1)");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate_config(c);
    switch (c.command) {
      case Command::kernel: return cmd_kernel(c, out);
      case Command::evolve: return cmd_evolve(c, out, err);
      case Command::grid: return cmd_grid(c, out, err);
      case Command::cone: return cmd_cone(c, out);
      case Command::caustics: return cmd_caustics(c, out);
      case Command::design: return cmd_design(c, out, err);
      case Command::roundtrip: return cmd_roundtrip(c, out);
      case Command::validate: return cmd_validate(c, out);
      case Command::continuum: return cmd_continuum(c, out, err);
    }
    return kBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const SuperluminalError& e) {
    err << "superluminal target: " << e.what() << '\n';
    return kDomainError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::runtime_error& e) {
    // quadrature, window and step-size failures of the numerical layers
    err << "numerical failure: " << e.what() << '\n';
    return kDomainError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"starkwave: exact propagator of a driven tight-binding chain"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  RunConfig config;
  std::string window;

  const std::vector<std::pair<std::string, Command>> commands{
      {"kernel", Command::kernel},       {"evolve", Command::evolve},       {"grid", Command::grid},
      {"cone", Command::cone},           {"caustics", Command::caustics},   {"design", Command::design},
      {"roundtrip", Command::roundtrip}, {"validate", Command::validate},   {"continuum", Command::continuum},
  };
  const std::map<std::string, std::string> help{
      {"kernel", "K_{m,source}(t1; t0) over the window"},
      {"evolve", "evolve a state (delta at --source or --state file) from t0 to t1"},
      {"grid", "intensity |K|^2 on a (time x site) grid, CSV and optional PGM"},
      {"cone", "light cone 2|F(t)| and the extracted front per time sample"},
      {"caustics", "wavefront curves of the stationary phase for each q"},
      {"design", "driving field JSON for a target trajectory"},
      {"roundtrip", "design, integrate back and compare |F| with the target"},
      {"validate", "invariant suite of the kernel, field and oracle layers"},
      {"continuum", "lattice-to-continuum convergence at constant E0"},
  };

  for (const auto& [name, cmd] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->callback([&config, cmd = cmd] { config.command = cmd; });
    sub->add_option("--field", config.field_file, "field-spec JSON file");
    sub->add_option("--t0", config.t_range.t0, "start time");
    sub->add_option("--t1", config.t_range.t1, "end time");
    sub->add_option("--samples", config.t_range.samples, "number of time samples (design: grid points)");
    sub->add_option("--window", window, "site window lo:hi (use --window=-20:20)");
    sub->add_option("--source", config.source, "source site");
    sub->add_option("--out", config.output, "output file (default stdout)");
    sub->add_option("--tol-oracle", config.tol.oracle, "oracle step-doubling tolerance");
    sub->add_option("--tol-unitarity", config.tol.unitarity, "column-norm tolerance");
    sub->add_option("--tol-recursion", config.tol.recursion, "three-term recursion residual tolerance");
    sub->add_option("--tol-translation", config.tol.translation, "translation-invariance tolerance");
    sub->add_option("--tol-semigroup", config.tol.semigroup, "composition-law tolerance");
    sub->add_option("--tol-roundtrip", config.tol.roundtrip, "design round-trip tolerance on |F|");
    sub->add_option("--tol-rowsum", config.tol.row_sum, "row-sum tolerance of the intensity grid");
    if (name == "evolve") {
      sub->add_option("--state", config.state_file, "initial state JSON {\"offset\", \"amplitudes\"}");
      sub->add_option("--margin", config.margin, "extra sites on each side of the output window");
    }
    if (name == "grid") sub->add_option("--pgm", config.pgm_output, "16-bit log-intensity PGM image");
    if (name == "cone") sub->add_option("--threshold", config.tol.threshold, "front threshold fraction of row max");
    if (name == "caustics") sub->add_option("--q", config.q_list, "branches, e.g. --q 0,1,2")->delimiter(',');
    if (name == "design" || name == "roundtrip") {
      sub->add_option("--trajectory", config.trajectory_file, "trajectory JSON file");
      sub->add_option("--eps", config.eps, "start of the designed interval");
    }
    if (name == "continuum") {
      auto& o = config.continuum;
      sub->add_option("--E0", o.E0, "constant force");
      sub->add_option("--tau", o.tau, "elapsed time");
      sub->add_option("--mu", o.mu, "mass");
      sub->add_option("--hbar", o.hbar, "Planck constant");
      sub->add_option("--x", o.x, "source position");
      sub->add_option("--xp", o.x_prime, "destination position");
      sub->add_option("--a-max", o.a_max, "largest lattice spacing");
      sub->add_option("--halvings", o.halvings, "number of lattice spacings in the study");
      sub->add_option("--smear", o.smear, "width of the Gaussian test packet");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (CLI::App* sub : app.get_subcommands()) err << sub->help();
    return kBadInput;
  }

  if (!window.empty()) {
    try {
      config.window = parse_window(window);
    } catch (const InputError& e) {
      err << "error: " << e.what() << '\n';
      return kBadInput;
    }
  }
  return run(config, out, err);
}

}  // namespace starkwave::cli
