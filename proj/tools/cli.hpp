#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "starkwave/propagator.hpp"

namespace starkwave::cli {

enum class Command { kernel, evolve, grid, cone, caustics, design, roundtrip, validate, continuum };

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kBadInput = 2, kDomainError = 3 };

struct TimeRange {
  double t0 = 0.0;
  double t1 = 5.0;
  std::optional<int> samples;  // command-specific default when unset
};

struct Tolerances {
  double oracle = 1.0e-6;
  double unitarity = 1.0e-10;
  double recursion = 1.0e-10;
  double translation = 1.0e-13;
  double semigroup = 1.0e-8;
  double roundtrip = 1.0e-6;
  double row_sum = 1.0e-9;
  double threshold = 1.0e-3;
};

struct ContinuumOptions {
  double E0 = 0.0;
  double tau = 1.0;
  double mu = 1.0;
  double hbar = 1.0;
  double x = 0.0;
  double x_prime = 0.5;
  double a_max = 0.25;
  int halvings = 4;
  double smear = 0.3;
};

struct RunConfig {
  Command command = Command::validate;
  std::filesystem::path field_file;
  std::filesystem::path trajectory_file;
  std::filesystem::path state_file;
  std::filesystem::path output;      // stdout when empty
  std::filesystem::path pgm_output;  // grid only
  TimeRange t_range;
  SiteWindow window{-20, 20};
  int source = 0;
  int margin = kMinWindowMargin;
  std::vector<int> q_list{0, 1, 2};
  double eps = 1.0e-2;
  Tolerances tol;
  ContinuumOptions continuum;
};

/// Checks the configuration invariants (t1 > t0 >= 0, samples >= 2,
/// non-empty window); throws InputError.
void validate_config(const RunConfig& config);

/// Executes one command. Tabular results go to config.output (or `out`),
/// diagnostics to `err`. Returns an ExitCode; library exceptions are mapped
/// to kBadInput / kDomainError.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with the `starkwave <command> [options]` grammar and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace starkwave::cli
