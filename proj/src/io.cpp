#include "starkwave/io.hpp"

#include <charconv>
#include <fstream>
#include <variant>

#include "starkwave/errors.hpp"

namespace starkwave {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("key \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::string type_of(const json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (!j.contains("type") || !j.at("type").is_string()) throw InputError("missing string key \"type\"");
  return j.at("type").get<std::string>();
}

std::vector<Impulse> parse_impulses(const json& j) {
  if (!j.is_array()) throw InputError("\"impulses\" must be an array");
  std::vector<Impulse> out;
  for (const json& e : j) {
    if (!e.is_object()) throw InputError("each impulse must be an object {\"t\": ..., \"w\": ...}");
    out.push_back({number(e, "t"), number(e, "w")});
  }
  return out;
}

Anchor parse_anchor(const json& j) {
  if (!j.is_object()) throw InputError("\"anchor\" must be an object");
  Anchor a;
  a.time = number(j, "t");
  a.f = number(j, "f");
  if (!j.contains("F") || !j.at("F").is_array() || j.at("F").size() != 2) throw InputError("anchor \"F\" must be [re, im]");
  const json& F = j.at("F");
  if (!F[0].is_number() || !F[1].is_number()) throw InputError("anchor \"F\" must hold two numbers");
  a.F = {F[0].get<double>(), F[1].get<double>()};
  return a;
}

FieldSpec smooth_from_json(const json& j, const std::string& type) {
  if (type == "zero") return FieldSpec::zero();
  if (type == "constant") return FieldSpec::constant(number(j, "alpha"));
  if (type == "table") {
    if (!j.contains("knots") || !j.at("knots").is_array()) throw InputError("table needs \"knots\": [[t, alpha], ...]");
    std::vector<double> ts, vs;
    for (const json& k : j.at("knots")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
        throw InputError("each knot must be [t, alpha]");
      ts.push_back(k[0].get<double>());
      vs.push_back(k[1].get<double>());
    }
    return FieldSpec::tabulated(std::move(ts), std::move(vs));
  }
  if (type == "uniform_acceleration")
    return FieldSpec::uniform_acceleration(number(j, "a"), number(j, "v"),
                                           number_or(j, "anchor_time", kDefaultAnchorTime));
  if (type == "mirror") return FieldSpec::mirror(number(j, "v"), number_or(j, "anchor_time", kDefaultAnchorTime));
  if (type == "freeze_out")
    return FieldSpec::freeze_out(number(j, "omega"), number_or(j, "anchor_time", kDefaultAnchorTime));
  throw InputError("unknown field type \"" + type + "\"");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

ordered_json anchor_json(const Anchor& a) {
  ordered_json j;
  j["t"] = a.time;
  j["f"] = a.f;
  j["F"] = {a.F.real(), a.F.imag()};
  return j;
}

}  // namespace

FieldSpec field_from_json(const json& j) {
  const std::string type = type_of(j);
  try {
    FieldSpec spec = smooth_from_json(j, type);
    if (j.contains("impulses")) spec = spec.with_impulses(parse_impulses(j.at("impulses")));
    if (j.contains("anchor")) spec = spec.with_anchor(parse_anchor(j.at("anchor")));
    return spec;
  } catch (const DomainError& e) {
    throw InputError("invalid " + type + " field: " + e.what());
  } catch (const json::exception& e) {
    throw InputError("invalid " + type + " field: " + e.what());
  }
}

ordered_json field_to_json(const FieldSpec& spec) {
  ordered_json j;
  bool closed_form = false;
  std::visit(Overloaded{
                 [&](const smooth::Zero&) { j["type"] = "zero"; },
                 [&](const smooth::Constant& s) {
                   j["type"] = "constant";
                   j["alpha"] = s.alpha;
                 },
                 [&](const smooth::Tabulated& s) {
                   j["type"] = "table";
                   ordered_json knots = ordered_json::array();
                   for (std::size_t i = 0; i < s.times.size(); ++i) knots.push_back({s.times[i], s.values[i]});
                   j["knots"] = std::move(knots);
                 },
                 [&](const smooth::UniformAcceleration& s) {
                   j["type"] = "uniform_acceleration";
                   j["a"] = s.a;
                   j["v"] = s.v;
                   closed_form = true;
                 },
                 [&](const smooth::Mirror& s) {
                   j["type"] = "mirror";
                   j["v"] = s.v;
                   closed_form = true;
                 },
                 [&](const smooth::FreezeOut& s) {
                   j["type"] = "freeze_out";
                   j["omega"] = s.omega;
                   closed_form = true;
                 },
                 [&](const smooth::Sampled& s) {
                   j["type"] = "table";
                   ordered_json knots = ordered_json::array();
                   for (double t : s.grid) knots.push_back({t, s.alpha(t)});
                   j["knots"] = std::move(knots);
                 },
             },
             spec.smooth());

  if (closed_form && spec.anchor()) {
    j["anchor_time"] = spec.anchor()->time;
  } else if (spec.anchor()) {
    j["anchor"] = anchor_json(*spec.anchor());
  }
  if (!spec.impulses().empty() || closed_form) {
    ordered_json imps = ordered_json::array();
    for (const Impulse& imp : spec.impulses()) imps.push_back({{"t", imp.time}, {"w", imp.weight}});
    j["impulses"] = std::move(imps);
  }
  return j;
}

FieldSpec load_field(const std::filesystem::path& path) {
  try {
    return field_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_field(const FieldSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << field_to_json(spec).dump(2) << '\n';
}

Trajectory trajectory_from_json(const json& j) {
  const std::string type = type_of(j);
  try {
    if (type == "trigonometric") return Trajectory::trigonometric(number(j, "alpha0"));
    if (type == "uniform_acceleration") return Trajectory::uniform_acceleration(number(j, "a"), number(j, "v"));
    if (type == "mirror") return Trajectory::mirror(number(j, "v"));
    if (type == "freeze_out") return Trajectory::freeze_out(number(j, "omega"));
    if (type == "samples") {
      if (!j.contains("rho") || !j.at("rho").is_array()) throw InputError("samples need \"rho\": [...]");
      std::vector<double> rho;
      for (const json& v : j.at("rho")) {
        if (!v.is_number()) throw InputError("\"rho\" entries must be numbers");
        rho.push_back(v.get<double>());
      }
      return Trajectory::from_samples(number(j, "t_start"), number(j, "step"), std::move(rho));
    }
  } catch (const DomainError& e) {
    throw InputError("invalid " + type + " trajectory: " + e.what());
  }
  throw InputError("unknown trajectory type \"" + type + "\"");
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  try {
    return trajectory_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

}  // namespace starkwave
