#pragma once

#include <ostream>

#include <json.hpp>

#include "lowreg/experiments/studies.hpp"
#include "lowreg/field_io.hpp"

namespace lowreg {

/// `tau,err_l2,err_h1,wall_s`
inline void write_study_csv(std::ostream& out, const StudyTable& t) {
  out << "tau,err_l2,err_h1,wall_s\n";
  for (const auto& r : t.rows)
    out << detail::format_double(r.tau) << ',' << detail::format_double(r.err_l2) << ','
        << detail::format_double(r.err_h1) << ',' << detail::format_double(r.wall_s) << '\n';
}

inline nlohmann::json study_json(const StudyTable& t, const std::vector<ErrorNorm>& norms) {
  using nlohmann::json;
  json slopes = json::object();
  for (const auto& [name, s] : t.slopes) slopes[name] = s ? json(*s) : json(nullptr);
  json rows = json::array();
  for (const auto& r : t.rows) {
    json errs = json::object();
    for (std::size_t k = 0; k < norms.size() && k < r.errors.size(); ++k)
      errs[detail::norm_name(norms[k])] = r.errors[k];
    rows.push_back({{"tau", r.tau}, {"errors", errs}, {"diverged", r.diverged}});
  }
  return {{"stepper", t.stepper},
          {"seed", t.seed},
          {"grid", {{"dim", t.grid.dim}, {"n", t.grid.n}, {"length", t.grid.length}}},
          {"reference", t.reference},
          {"config_hash", t.config_hash},
          {"slopes", slopes},
          {"degenerate", t.degenerate},
          {"rows", rows},
          {"notes", t.notes}};
}

/// `t,mass_rel,energy_rel`
inline void write_series_csv(std::ostream& out, const ConservationSeries& s) {
  out << "t,mass_rel,energy_rel\n";
  const auto& samples = s.record.samples;
  for (std::size_t i = 0; i < samples.size(); ++i)
    out << detail::format_double(samples[i].t) << ',' << detail::format_double(s.mass_rel[i]) << ','
        << detail::format_double(s.energy_rel[i]) << '\n';
}

inline nlohmann::json summary_json(const ConservationSeries& s) {
  const auto& m = s.summary;
  return {{"stepper", s.stepper},
          {"diverged", s.record.diverged},
          {"steps_completed", s.record.steps_completed},
          {"message", s.record.message},
          {"max_mass_dev", m.max_mass_dev},
          {"max_energy_dev", m.max_energy_dev},
          {"first_half_mass_dev", m.first_half_mass_dev},
          {"second_half_mass_dev", m.second_half_mass_dev},
          {"first_half_energy_dev", m.first_half_energy_dev},
          {"second_half_energy_dev", m.second_half_energy_dev}};
}

/// `stepper,tau,steps,err_l2,wall_s`
inline void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
  out << "stepper,tau,steps,err_l2,wall_s\n";
  for (const auto& r : rows)
    out << r.stepper << ',' << detail::format_double(r.tau) << ',' << r.steps << ','
        << detail::format_double(r.err_l2) << ',' << detail::format_double(r.wall_s) << '\n';
}

} // namespace lowreg
