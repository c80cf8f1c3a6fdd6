#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lowreg/experiments/schemes.hpp"
#include "lowreg/initial_data.hpp"

namespace lowreg {

struct GridSpec {
  int dim = 1;
  std::size_t n = 256;
  double length = 2.0 * std::numbers::pi;

  [[nodiscard]] GridPtr make() const {
    if (dim == 1) return make_grid_1d(n, length);
    return make_grid(dim, std::vector<std::size_t>(dim, n), std::vector<double>(dim, length));
  }
};

struct InitialDataSpec {
  enum class Kind { random, plane_wave, file } kind = Kind::random;
  RandomDataSpec random{2.0, 0, 0};
  double amplitude = 1.0;
  long mode = 1;
  std::string path;
};

struct ReferenceSpec {
  enum class Kind { exact, fine } kind = Kind::fine;
  std::string stepper = "slri2";
  double tau = 1e-4;
};

/// Settings shared by every study; each study reads the fields it needs.
struct ExperimentConfig {
  std::vector<std::string> steppers{"slri1"};
  GridSpec grid;
  InitialDataSpec data;
  double mu = 1.0;
  std::vector<double> taus{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  double tau = 0.005;
  std::optional<std::size_t> steps;
  std::optional<double> final_time;
  ReferenceSpec reference;
  std::vector<ErrorNorm> norms{ErrorNorm::l2(), ErrorNorm::h1()};
  std::size_t stride = 1;
  double dealias = 1.0;
  unsigned jobs = 1;
  unsigned repetitions = 3;
};

using ConvergenceConfig = ExperimentConfig;

/// Number of steps of size tau covering final_time; rejects non-dividing tau.
inline std::size_t steps_for(double final_time, double tau) {
  if (!(tau > 0.0)) throw ConfigError("step size must be positive");
  if (!(final_time >= 0.0)) throw ConfigError("final time must be >= 0");
  const double ratio = final_time / tau;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-6)
    throw ConfigError("step size " + std::to_string(tau) + " does not divide final time " +
                      std::to_string(final_time));
  return static_cast<std::size_t>(n);
}

inline Field make_initial_data(const ExperimentConfig& cfg) {
  const auto& d = cfg.data;
  switch (d.kind) {
  case InitialDataSpec::Kind::random: return random_h_alpha(cfg.grid.make(), d.random);
  case InitialDataSpec::Kind::plane_wave: return plane_wave(cfg.grid.make(), d.amplitude, d.mode);
  case InitialDataSpec::Kind::file: {
    Field f = load_field(d.path);
    const auto g = cfg.grid.make();
    if (!(f.grid() == *g))
      throw ConfigError("field file '" + d.path + "' does not match the configured grid");
    return f;
  }
  }
  throw ConfigError("unknown initial data kind");
}

// ---- JSON form -------------------------------------------------------------

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown config key '" + where + key + "'");
}

inline std::string norm_name(const ErrorNorm& n) {
  switch (n.kind) {
  case ErrorNorm::Kind::L2: return "l2";
  case ErrorNorm::Kind::H1: return "h1";
  case ErrorNorm::Kind::Halpha: {
    char buf[40];
    std::snprintf(buf, sizeof buf, "h:%.17g", n.alpha);
    return buf;
  }
  }
  return "l2";
}

inline ErrorNorm parse_norm(const std::string& s) {
  if (s == "l2") return ErrorNorm::l2();
  if (s == "h1") return ErrorNorm::h1();
  if (s.rfind("h:", 0) == 0) {
    char* end = nullptr;
    const double a = std::strtod(s.c_str() + 2, &end);
    if (*end == '\0' && a >= 0.0) return ErrorNorm::h(a);
  }
  throw ConfigError("unknown error norm '" + s + "' (use l2, h1 or h:<alpha>)");
}

template <typename T>
T get_as(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

} // namespace detail

inline std::string_view to_string(InitialDataSpec::Kind k) {
  switch (k) {
  case InitialDataSpec::Kind::random: return "random";
  case InitialDataSpec::Kind::plane_wave: return "plane_wave";
  case InitialDataSpec::Kind::file: return "file";
  }
  return "?";
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
  using nlohmann::json;
  json data{{"kind", std::string(to_string(c.data.kind))}};
  switch (c.data.kind) {
  case InitialDataSpec::Kind::random:
    data["alpha"] = c.data.random.alpha;
    data["seed"] = c.data.random.seed;
    data["n_ref"] = c.data.random.n_ref;
    break;
  case InitialDataSpec::Kind::plane_wave:
    data["amplitude"] = c.data.amplitude;
    data["mode"] = c.data.mode;
    break;
  case InitialDataSpec::Kind::file: data["path"] = c.data.path; break;
  }
  json ref{{"kind", c.reference.kind == ReferenceSpec::Kind::exact ? "exact" : "fine"}};
  if (c.reference.kind == ReferenceSpec::Kind::fine) {
    ref["stepper"] = c.reference.stepper;
    ref["tau"] = c.reference.tau;
  }
  json norms = json::array();
  for (const auto& n : c.norms) norms.push_back(detail::norm_name(n));

  json j{{"steppers", c.steppers},
         {"grid", {{"dim", c.grid.dim}, {"n", c.grid.n}, {"length", c.grid.length}}},
         {"data", data},
         {"mu", c.mu},
         {"taus", c.taus},
         {"tau", c.tau},
         {"reference", ref},
         {"norms", norms},
         {"stride", c.stride},
         {"dealias", c.dealias},
         {"jobs", c.jobs},
         {"repetitions", c.repetitions}};
  if (c.steps) j["steps"] = *c.steps;
  if (c.final_time) j["final_time"] = *c.final_time;
  return j;
}

/// Strict reader: unknown keys and wrong types are ConfigErrors.
inline ExperimentConfig config_from_json(const nlohmann::json& j,
                                         ExperimentConfig c = ExperimentConfig{}) {
  using detail::get_as;
  detail::reject_unknown_keys(j,
                              {"stepper", "steppers", "grid", "data", "mu", "taus", "tau", "steps",
                               "final_time", "reference", "norms", "stride", "dealias", "jobs",
                               "repetitions"},
                              "");
  if (j.contains("stepper") && j.contains("steppers"))
    throw ConfigError("config sets both 'stepper' and 'steppers'");
  if (j.contains("stepper")) c.steppers = {get_as<std::string>(j, "stepper")};
  if (j.contains("steppers")) c.steppers = get_as<std::vector<std::string>>(j, "steppers");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    detail::reject_unknown_keys(g, {"dim", "n", "length"}, "grid.");
    if (g.contains("dim")) c.grid.dim = get_as<int>(g, "dim");
    if (g.contains("n")) c.grid.n = get_as<std::size_t>(g, "n");
    if (g.contains("length")) c.grid.length = get_as<double>(g, "length");
  }
  if (j.contains("data")) {
    const auto& d = j["data"];
    detail::reject_unknown_keys(d, {"kind", "alpha", "seed", "n_ref", "amplitude", "mode", "path"},
                                "data.");
    if (d.contains("kind")) {
      const auto kind = get_as<std::string>(d, "kind");
      if (kind == "random") c.data.kind = InitialDataSpec::Kind::random;
      else if (kind == "plane_wave") c.data.kind = InitialDataSpec::Kind::plane_wave;
      else if (kind == "file") c.data.kind = InitialDataSpec::Kind::file;
      else throw ConfigError("unknown data kind '" + kind + "'");
    }
    if (d.contains("alpha")) c.data.random.alpha = get_as<double>(d, "alpha");
    if (d.contains("seed")) c.data.random.seed = get_as<std::uint64_t>(d, "seed");
    if (d.contains("n_ref")) c.data.random.n_ref = get_as<long>(d, "n_ref");
    if (d.contains("amplitude")) c.data.amplitude = get_as<double>(d, "amplitude");
    if (d.contains("mode")) c.data.mode = get_as<long>(d, "mode");
    if (d.contains("path")) c.data.path = get_as<std::string>(d, "path");
  }
  if (j.contains("mu")) c.mu = get_as<double>(j, "mu");
  if (j.contains("taus")) c.taus = get_as<std::vector<double>>(j, "taus");
  if (j.contains("tau")) c.tau = get_as<double>(j, "tau");
  if (j.contains("steps")) c.steps = get_as<std::size_t>(j, "steps");
  if (j.contains("final_time")) c.final_time = get_as<double>(j, "final_time");
  if (j.contains("reference")) {
    const auto& r = j["reference"];
    detail::reject_unknown_keys(r, {"kind", "stepper", "tau"}, "reference.");
    if (r.contains("kind")) {
      const auto kind = get_as<std::string>(r, "kind");
      if (kind == "exact") c.reference.kind = ReferenceSpec::Kind::exact;
      else if (kind == "fine") c.reference.kind = ReferenceSpec::Kind::fine;
      else throw ConfigError("unknown reference kind '" + kind + "'");
    }
    if (r.contains("stepper")) c.reference.stepper = get_as<std::string>(r, "stepper");
    if (r.contains("tau")) c.reference.tau = get_as<double>(r, "tau");
  }
  if (j.contains("norms")) {
    c.norms.clear();
    for (const auto& s : get_as<std::vector<std::string>>(j, "norms"))
      c.norms.push_back(detail::parse_norm(s));
  }
  if (j.contains("stride")) c.stride = get_as<std::size_t>(j, "stride");
  if (j.contains("dealias")) c.dealias = get_as<double>(j, "dealias");
  if (j.contains("jobs")) c.jobs = get_as<unsigned>(j, "jobs");
  if (j.contains("repetitions")) c.repetitions = get_as<unsigned>(j, "repetitions");
  return c;
}

/// Basic validation common to all studies.
inline void validate(const ExperimentConfig& c) {
  if (c.steppers.empty()) throw ConfigError("no steppers configured");
  for (const auto& s : c.steppers) (void)make_scheme(s, c.mu);
  (void)c.grid.make();
  if (c.data.kind == InitialDataSpec::Kind::random && !(c.data.random.alpha >= 0.0))
    throw ConfigError("data.alpha must be >= 0");
  if (c.data.kind == InitialDataSpec::Kind::file && c.data.path.empty())
    throw ConfigError("data.path is required for file data");
  if (!(c.dealias >= 1.0)) throw ConfigError("dealias factor must be >= 1");
  if (c.jobs == 0) throw ConfigError("jobs must be >= 1");
  if (c.repetitions == 0) throw ConfigError("repetitions must be >= 1");
  if (c.norms.empty()) throw ConfigError("no error norms requested");
}

/// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits. `jobs` is left
/// out since it does not change results.
inline std::string config_hash(const ExperimentConfig& c) {
  auto j = to_json(c);
  j.erase("jobs");
  const std::string text = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace lowreg
