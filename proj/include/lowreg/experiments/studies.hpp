#pragma once

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lowreg/experiments/config.hpp"
#include "lowreg/experiments/order.hpp"
#include "lowreg/experiments/parallel.hpp"

namespace lowreg {

// ---- convergence ------------------------------------------------------------

struct StudyRow {
  double tau{};
  double err_l2{};
  double err_h1{};
  double wall_s{};
  bool diverged{};
  /// Errors in the configured norms, same order as ExperimentConfig::norms.
  std::vector<double> errors;
};

struct StudyTable {
  std::string stepper;
  std::vector<StudyRow> rows; ///< sorted by tau, descending
  /// Fitted order per norm name; nullopt when the fit is degenerate.
  std::map<std::string, std::optional<double>> slopes;
  bool degenerate{};
  std::uint64_t seed{};
  GridSpec grid;
  std::string config_hash;
  std::string reference;
  std::vector<std::string> notes;
};

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline std::string describe_reference(const ExperimentConfig& cfg) {
  if (cfg.reference.kind == ReferenceSpec::Kind::exact) return "exact plane wave";
  return "fine " + cfg.reference.stepper + " tau=" + std::to_string(cfg.reference.tau);
}

/// Reference solution at `final_time`, computed once per study.
inline Field reference_solution(const ExperimentConfig& cfg, const Field& u0, double final_time) {
  if (cfg.reference.kind == ReferenceSpec::Kind::exact) {
    if (cfg.data.kind != InitialDataSpec::Kind::plane_wave)
      throw ConfigError("exact reference requires plane_wave data");
    return plane_wave_exact(u0.grid_ptr(), cfg.data.amplitude, cfg.data.mode, cfg.mu, final_time);
  }
  const auto scheme = make_scheme(cfg.reference.stepper, cfg.mu, cfg.dealias);
  const auto n = steps_for(final_time, cfg.reference.tau);
  EvolveOptions opt;
  opt.stride = 0;
  opt.record_observables = false;
  auto res = run_scheme(scheme, u0, cfg.reference.tau, n, opt);
  if (res.record.diverged)
    throw DivergenceError("reference run diverged: " + res.record.message, res.record.steps_completed);
  return res.final;
}

inline void validate_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.taus.empty()) throw ConfigError("convergence: empty tau ladder");
  const double T = cfg.final_time.value_or(1.0);
  for (double t : cfg.taus) (void)steps_for(T, t);
  if (cfg.reference.kind == ReferenceSpec::Kind::fine) {
    const double tmin = *std::min_element(cfg.taus.begin(), cfg.taus.end());
    if (!(cfg.reference.tau < tmin / 8.0))
      throw ConfigError("reference tau must be below min(taus)/8");
    (void)make_scheme(cfg.reference.stepper, cfg.mu);
    (void)steps_for(T, cfg.reference.tau);
  }
}

/// Fits each norm over the rows after the last diverged one.
inline void fit_slopes(StudyTable& table, const std::vector<ErrorNorm>& norms) {
  std::size_t first = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    if (table.rows[r].diverged) first = r + 1;
  table.degenerate = false;
  for (std::size_t k = 0; k < norms.size(); ++k) {
    std::vector<ErrorPoint> pts;
    for (std::size_t r = first; r < table.rows.size(); ++r)
      pts.push_back({table.rows[r].tau, table.rows[r].errors[k]});
    const auto name = detail::norm_name(norms[k]);
    try {
      table.slopes[name] = order_estimate(pts);
    } catch (const NumericalError&) {
      table.slopes[name] = std::nullopt;
      table.degenerate = true;
    }
  }
}

/// Error at the final time against a reference, one row per (stepper, tau).
inline std::vector<StudyTable> convergence_study(const ExperimentConfig& cfg) {
  validate_convergence(cfg);
  const double T = cfg.final_time.value_or(1.0);
  const Field u0 = make_initial_data(cfg);
  const Field ref = reference_solution(cfg, u0, T);
  const auto hash = config_hash(cfg);

  struct Job {
    std::size_t table;
    double tau;
  };
  std::vector<Job> jobs;
  std::vector<StudyTable> tables(cfg.steppers.size());
  for (std::size_t s = 0; s < cfg.steppers.size(); ++s) {
    auto& t = tables[s];
    t.stepper = cfg.steppers[s];
    t.seed = cfg.data.random.seed;
    t.grid = cfg.grid;
    t.config_hash = hash;
    t.reference = describe_reference(cfg);
    if (cfg.steppers[s] != "lri1" && cfg.steppers[s] != "lri2")
      t.notes.push_back("u^1 computed with the underlying one-step flow");
    for (double tau : cfg.taus) jobs.push_back({s, tau});
  }

  std::vector<StudyRow> rows(jobs.size());
  detail::parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto scheme = make_scheme(cfg.steppers[job.table], cfg.mu, cfg.dealias);
    EvolveOptions opt;
    opt.stride = 0;
    opt.record_observables = false;
    const auto start = std::chrono::steady_clock::now();
    auto res = run_scheme(scheme, u0, job.tau, steps_for(T, job.tau), opt);
    StudyRow row;
    row.wall_s = seconds_since(start);
    row.tau = job.tau;
    row.diverged = res.record.diverged;
    row.err_l2 = error_norm(res.final, ref, ErrorNorm::l2());
    row.err_h1 = error_norm(res.final, ref, ErrorNorm::h1());
    for (const auto& n : cfg.norms) row.errors.push_back(error_norm(res.final, ref, n));
    rows[i] = std::move(row);
  });

  for (std::size_t i = 0; i < jobs.size(); ++i) tables[jobs[i].table].rows.push_back(rows[i]);
  for (auto& t : tables) {
    std::sort(t.rows.begin(), t.rows.end(),
              [](const StudyRow& a, const StudyRow& b) { return a.tau > b.tau; });
    fit_slopes(t, cfg.norms);
    if (t.degenerate) t.notes.push_back("degenerate slope fit: errors at the roundoff floor");
  }
  return tables;
}

// ---- conservation -----------------------------------------------------------

struct ConservationSummary {
  double max_mass_dev{};
  double max_energy_dev{};
  double first_half_mass_dev{};
  double second_half_mass_dev{};
  double first_half_energy_dev{};
  double second_half_energy_dev{};
};

struct ConservationSeries {
  std::string stepper;
  RunRecord record;
  std::vector<double> mass_rel;
  std::vector<double> energy_rel;
  ConservationSummary summary;
};

/// Max deviations over the whole run and over t <= T/2 and t >= T/2.
inline ConservationSummary summarize(const std::vector<double>& t, const std::vector<double>& mass_rel,
                                     const std::vector<double>& energy_rel, double final_time) {
  ConservationSummary s;
  const double half = 0.5 * final_time;
  for (std::size_t i = 0; i < t.size(); ++i) {
    s.max_mass_dev = std::max(s.max_mass_dev, mass_rel[i]);
    s.max_energy_dev = std::max(s.max_energy_dev, energy_rel[i]);
    if (t[i] <= half) {
      s.first_half_mass_dev = std::max(s.first_half_mass_dev, mass_rel[i]);
      s.first_half_energy_dev = std::max(s.first_half_energy_dev, energy_rel[i]);
    }
    if (t[i] >= half) {
      s.second_half_mass_dev = std::max(s.second_half_mass_dev, mass_rel[i]);
      s.second_half_energy_dev = std::max(s.second_half_energy_dev, energy_rel[i]);
    }
  }
  return s;
}

/// Relative mass and energy deviation series for each stepper.
inline std::vector<ConservationSeries> conservation_study(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.stride == 0) throw ConfigError("conservation: stride must be >= 1");
  const double T = cfg.final_time.value_or(100.0);
  const auto n_steps = steps_for(T, cfg.tau);
  const Field u0 = make_initial_data(cfg);

  std::vector<ConservationSeries> out(cfg.steppers.size());
  detail::parallel_for(cfg.steppers.size(), cfg.jobs, [&](std::size_t s) {
    const auto scheme = make_scheme(cfg.steppers[s], cfg.mu, cfg.dealias);
    EvolveOptions opt;
    opt.stride = cfg.stride;
    auto res = run_scheme(scheme, u0, cfg.tau, n_steps, opt);
    ConservationSeries series;
    series.stepper = cfg.steppers[s];
    series.record = std::move(res.record);
    if (series.record.samples.empty())
      series.record.samples.push_back(sample_observables(u0, 0.0, cfg.mu));
    const auto& first = series.record.samples.front();
    series.mass_rel = relative_deviation(series.record.masses(), first.mass);
    series.energy_rel = first.energy != 0.0
                            ? relative_deviation(series.record.energies(), first.energy)
                            : std::vector<double>(series.record.samples.size(), 0.0);
    series.summary = summarize(series.record.times(), series.mass_rel, series.energy_rel, T);
    out[s] = std::move(series);
  });
  return out;
}

// ---- timing -----------------------------------------------------------------

struct TimingRow {
  std::string stepper;
  double tau{};
  std::size_t steps{};
  double err_l2{};
  double wall_s{}; ///< median over repetitions, stepping loop only
};

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Wall time of a run of `steps` steps, median of `repetitions`.
inline double time_run(const Scheme& scheme, const Field& u0, double tau, std::size_t steps,
                       unsigned repetitions, Field* final_out = nullptr) {
  EvolveOptions opt;
  opt.stride = 0;
  opt.record_observables = false;
  std::vector<double> times;
  for (unsigned r = 0; r < repetitions; ++r) {
    const auto start = std::chrono::steady_clock::now();
    auto res = run_scheme(scheme, u0, tau, steps, opt);
    times.push_back(seconds_since(start));
    if (final_out && r == 0) *final_out = std::move(res.final);
  }
  return median(times);
}

/// Error and cost per (stepper, tau). Runs sequentially so timings do not
/// compete for cores.
inline std::vector<TimingRow> timing_study(const ExperimentConfig& cfg) {
  validate_convergence(cfg);
  const double T = cfg.final_time.value_or(1.0);
  const Field u0 = make_initial_data(cfg);
  const Field ref = reference_solution(cfg, u0, T);
  std::vector<TimingRow> rows;
  for (const auto& name : cfg.steppers) {
    const auto scheme = make_scheme(name, cfg.mu, cfg.dealias);
    for (double tau : cfg.taus) {
      TimingRow row;
      row.stepper = name;
      row.tau = tau;
      row.steps = steps_for(T, tau);
      Field final = u0;
      row.wall_s = time_run(scheme, u0, tau, row.steps, cfg.repetitions, &final);
      row.err_l2 = error_norm(final, ref, ErrorNorm::l2());
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

} // namespace lowreg
