#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lowreg/lowreg.hpp"

namespace lowreg::cli {

enum ExitCode : int { ok = 0, config_error = 1, divergence = 2, io_error = 3 };

struct Overrides {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::size_t> n;
  std::optional<double> length;
  std::optional<double> tau;
  std::optional<std::size_t> steps;
  std::optional<double> final_time;
  std::optional<double> mu;
  std::vector<std::string> steppers;
  std::optional<unsigned> jobs;
  std::optional<double> dealias;
};

namespace detail {

namespace fs = std::filesystem;

inline nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

/// Defaults, then the config file, then flags.
inline ExperimentConfig resolve(const std::string& sub, const Overrides& o) {
  ExperimentConfig cfg;
  if (sub == "conserve") {
    cfg.steppers = {"lri1", "slri1", "lri2", "slri2"};
    cfg.mu = -1.0;
  }
  if (!o.config.empty()) cfg = config_from_json(read_config_file(o.config), cfg);

  if (o.alpha) {
    cfg.data.kind = InitialDataSpec::Kind::random;
    cfg.data.random.alpha = *o.alpha;
  }
  if (o.seed) cfg.data.random.seed = *o.seed;
  if (o.n) cfg.grid.n = *o.n;
  if (o.length) cfg.grid.length = *o.length;
  if (o.mu) cfg.mu = *o.mu;
  if (!o.steppers.empty()) cfg.steppers = o.steppers;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.dealias) cfg.dealias = *o.dealias;
  if (o.final_time) cfg.final_time = *o.final_time;
  if (o.steps) cfg.steps = *o.steps;
  if (o.tau) {
    if (sub == "convergence" || sub == "timing") cfg.taus = {*o.tau};
    else cfg.tau = *o.tau;
  }

  if (sub == "convergence" || sub == "timing") {
    if (!cfg.final_time) cfg.final_time = 1.0;
  } else if (sub == "conserve") {
    if (!cfg.final_time) cfg.final_time = 100.0;
  } else if (sub == "run") {
    if (cfg.steps && cfg.final_time) {
      if (steps_for(*cfg.final_time, cfg.tau) != *cfg.steps)
        throw ConfigError("'steps' and 'final_time' disagree for the given tau");
    } else if (cfg.final_time) {
      cfg.steps = steps_for(*cfg.final_time, cfg.tau);
    } else {
      if (!cfg.steps) cfg.steps = 100;
      cfg.final_time = static_cast<double>(*cfg.steps) * cfg.tau;
    }
  }
  validate(cfg);
  return cfg;
}

class OutputDir {
public:
  OutputDir(const std::string& dir, std::vector<std::string> inputs) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
    for (const auto& p : inputs)
      if (!p.empty() && fs::exists(p)) inputs_.push_back(fs::weakly_canonical(p));
  }

  [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

  /// Opens an output file, refusing to touch any input file.
  std::ofstream open(const std::string& name) const {
    const auto p = dir_ / name;
    for (const auto& in : inputs_)
      if (fs::weakly_canonical(p) == in)
        throw IoError("refusing to overwrite input file '" + p.string() + "'");
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
    return out;
  }

  void write_text(const std::string& name, const std::string& text) const {
    auto out = open(name);
    out << text;
    if (!out) throw IoError("write to '" + path(name) + "' failed");
  }

private:
  fs::path dir_;
  std::vector<fs::path> inputs_;
};

inline std::vector<std::string> input_files(const Overrides& o, const ExperimentConfig& cfg) {
  return {o.config, cfg.data.kind == InitialDataSpec::Kind::file ? cfg.data.path : ""};
}

inline void echo_config(const OutputDir& dir, const std::string& prefix,
                        const ExperimentConfig& cfg) {
  dir.write_text(prefix + ".config.json", to_json(cfg).dump(2) + "\n");
}

inline int cmd_run(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out,
                  [[maybe_unused]] std::ostream& err) {
  const OutputDir dir(o.out, input_files(o, cfg));
  const auto prefix = "run_" + config_hash(cfg);
  echo_config(dir, prefix, cfg);
  const auto& name = cfg.steppers.front();
  const auto scheme = make_scheme(name, cfg.mu, cfg.dealias);
  const Field u0 = make_initial_data(cfg);
  EvolveOptions opt;
  opt.stride = cfg.stride;
  auto res = run_scheme(scheme, u0, cfg.tau, *cfg.steps, opt);

  ConservationSeries series;
  series.stepper = name;
  series.record = std::move(res.record);
  if (series.record.samples.empty())
    series.record.samples.push_back(sample_observables(u0, 0.0, cfg.mu));
  const auto& first = series.record.samples.front();
  series.mass_rel = first.mass != 0.0 ? relative_deviation(series.record.masses(), first.mass)
                                      : std::vector<double>(series.record.samples.size(), 0.0);
  series.energy_rel = first.energy != 0.0
                          ? relative_deviation(series.record.energies(), first.energy)
                          : std::vector<double>(series.record.samples.size(), 0.0);
  {
    auto f = dir.open(prefix + ".csv");
    write_series_csv(f, series);
  }
  {
    auto f = dir.open(prefix + "_final.field");
    write_field(f, res.final);
  }
  out << "steps " << series.record.steps_completed << "\n";
  out << "output " << dir.path(prefix + ".csv") << "\n";
  if (series.record.diverged) {
    err << "error: " << series.record.message << "\n";
    return divergence;
  }
  return ok;
}

inline int cmd_convergence(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out,
                  [[maybe_unused]] std::ostream& err) {
  const OutputDir dir(o.out, input_files(o, cfg));
  const auto prefix = "convergence_" + config_hash(cfg);
  echo_config(dir, prefix, cfg);
  const auto tables = convergence_study(cfg);
  for (const auto& t : tables) {
    {
      auto f = dir.open(prefix + "_" + t.stepper + ".csv");
      write_study_csv(f, t);
    }
    dir.write_text(prefix + "_" + t.stepper + ".json", study_json(t, cfg.norms).dump(2) + "\n");
    out << t.stepper;
    for (const auto& [norm, s] : t.slopes) {
      out << "  " << norm << "_slope=";
      if (s) out << std::fixed << std::setprecision(3) << *s << std::defaultfloat;
      else out << "degenerate";
    }
    out << "\n";
  }
  return ok;
}

inline int cmd_conserve(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out,
                  [[maybe_unused]] std::ostream& err) {
  const OutputDir dir(o.out, input_files(o, cfg));
  const auto prefix = "conserve_" + config_hash(cfg);
  echo_config(dir, prefix, cfg);
  const auto all = conservation_study(cfg);
  nlohmann::json summary = nlohmann::json::array();
  bool diverged = false;
  for (const auto& s : all) {
    auto f = dir.open(prefix + "_" + s.stepper + ".csv");
    write_series_csv(f, s);
    summary.push_back(summary_json(s));
    out << s.stepper << "  max_mass_rel=" << s.summary.max_mass_dev
        << "  max_energy_rel=" << s.summary.max_energy_dev
        << (s.record.diverged ? "  DIVERGED" : "") << "\n";
    if (s.record.diverged) {
      err << "error: " << s.stepper << ": " << s.record.message << "\n";
      diverged = true;
    }
  }
  dir.write_text(prefix + ".json", summary.dump(2) + "\n");
  return diverged ? divergence : ok;
}

inline int cmd_timing(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out,
                  [[maybe_unused]] std::ostream& err) {
  const OutputDir dir(o.out, input_files(o, cfg));
  const auto prefix = "timing_" + config_hash(cfg);
  echo_config(dir, prefix, cfg);
  const auto rows = timing_study(cfg);
  {
    auto f = dir.open(prefix + ".csv");
    write_timing_csv(f, rows);
  }
  for (const auto& r : rows)
    out << r.stepper << "  tau=" << r.tau << "  err_l2=" << r.err_l2 << "  wall_s=" << r.wall_s
        << "\n";
  return ok;
}

inline int cmd_gen_data(const ExperimentConfig& cfg, const Overrides& o, std::ostream& out,
                  [[maybe_unused]] std::ostream& err) {
  if (cfg.data.kind != InitialDataSpec::Kind::random)
    throw ConfigError("gen-data generates random data; set --alpha or data.kind = random");
  const OutputDir dir(o.out, input_files(o, cfg));
  const auto prefix = "field_" + config_hash(cfg);
  echo_config(dir, prefix, cfg);
  const Field u0 = make_initial_data(cfg);
  {
    auto f = dir.open(prefix + ".txt");
    write_field(f, u0);
  }
  const double alpha = cfg.data.random.alpha;
  out << "path " << dir.path(prefix + ".txt") << "\n";
  out << std::setprecision(15) << "l2 " << sobolev_norm(u0, 0.0) << "\n";
  for (double a : {alpha - 0.5, alpha, alpha + 0.5})
    if (a >= 0.0) out << "h" << a << " " << sobolev_norm(u0, a) << "\n";
  return ok;
}

} // namespace detail

/// Batch entry point. Exit codes: 0 success, 1 config error, 2 numerical
/// divergence, 3 I/O error.
inline int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out = std::cout,
                              std::ostream& err = std::cerr) {
  CLI::App app{"Low-regularity and symmetric integrators for the cubic NLSE", "lowreg"};
  app.require_subcommand(1);
  Overrides o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random data seed");
    sub->add_option("--alpha", o.alpha, "Sobolev regularity of random data");
    sub->add_option("--n", o.n, "Grid points per axis");
    sub->add_option("--length", o.length, "Period of the torus");
    sub->add_option("--tau", o.tau, "Step size (replaces the ladder for convergence/timing)");
    sub->add_option("--steps", o.steps, "Number of steps (run)");
    sub->add_option("--final-time", o.final_time, "Final time");
    sub->add_option("--mu", o.mu, "Nonlinearity coefficient");
    sub->add_option("--stepper", o.steppers, "lri1, lri2, slri1, slri2, sym-lri1, sym-lri2")
        ->delimiter(',');
    sub->add_option("--jobs", o.jobs, "Rows run concurrently");
    sub->add_option("--dealias", o.dealias, "Zero-padding factor for products (1 = off, 1.5 = 3/2 rule)");
  };

  std::string chosen;
  for (const char* name : {"run", "convergence", "conserve", "timing", "gen-data"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub);
    sub->callback([&chosen, name] { chosen = name; });
  }
  app.get_subcommand("run")->description("Evolve one stepper and record mass/energy");
  app.get_subcommand("convergence")->description("Error vs step size with fitted orders");
  app.get_subcommand("conserve")->description("Long-time mass/energy deviation series");
  app.get_subcommand("timing")->description("Error vs wall time");
  app.get_subcommand("gen-data")->description("Write a random H^alpha field file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }

  try {
    if (o.alpha && *o.alpha < 0.0) throw ConfigError("--alpha must be >= 0");
    const auto cfg = detail::resolve(chosen, o);
    if (chosen == "run") return detail::cmd_run(cfg, o, out, err);
    if (chosen == "convergence") return detail::cmd_convergence(cfg, o, out, err);
    if (chosen == "conserve") return detail::cmd_conserve(cfg, o, out, err);
    if (chosen == "timing") return detail::cmd_timing(cfg, o, out, err);
    return detail::cmd_gen_data(cfg, o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return divergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return io_error;
  }
}

} // namespace lowreg::cli
