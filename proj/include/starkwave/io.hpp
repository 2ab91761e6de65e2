#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "starkwave/designer.hpp"
#include "starkwave/field.hpp"

namespace starkwave {

/// Field files are JSON objects:
///
///   {"type": "zero"}
///   {"type": "constant", "alpha": 0.5}
///   {"type": "table", "knots": [[t0, alpha0], [t1, alpha1], ...]}
///   {"type": "uniform_acceleration", "a": 0.2, "v": 0.1}
///   {"type": "mirror", "v": 0.5}
///   {"type": "freeze_out", "omega": 0.5}
///
/// with optional "impulses": [{"t": time, "w": weight}, ...] and, for the
/// singular closed forms and designed tables, an optional
/// "anchor": {"t": time, "f": phase, "F": [re, im]}. The closed forms also
/// accept "anchor_time". A mirror without an "impulses" key gets its
/// reflection impulse; an explicit list replaces it.
FieldSpec field_from_json(const nlohmann::json& j);

/// Sampled fields are written as tables on their grid.
nlohmann::ordered_json field_to_json(const FieldSpec& spec);

FieldSpec load_field(const std::filesystem::path& path);
void save_field(const FieldSpec& spec, const std::filesystem::path& path);

/// Trajectory files:
///
///   {"type": "trigonometric", "alpha0": 0.8}
///   {"type": "uniform_acceleration", "a": 0.2, "v": 0.1}
///   {"type": "mirror", "v": 0.5}
///   {"type": "freeze_out", "omega": 0.5}
///   {"type": "samples", "t_start": 0.01, "step": 0.01, "rho": [...]}
Trajectory trajectory_from_json(const nlohmann::json& j);
Trajectory load_trajectory(const std::filesystem::path& path);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace starkwave
