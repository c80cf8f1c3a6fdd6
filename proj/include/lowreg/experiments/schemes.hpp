#pragma once

#include <string>
#include <variant>
#include <vector>

#include "lowreg/symmetrizer.hpp"

namespace lowreg {

/// Anything the harness can run: a one-step flow or a two-step stepper.
using Scheme = std::variant<FlowPair, Stepper>;

/// "lri1", "lri2" (one-step), "slri1", "slri2" (direct symmetric),
/// "sym-lri1", "sym-lri2" (generic symmetrization of the named flow).
inline Scheme make_scheme(const std::string& name, double mu, double pad = 1.0) {
  if (name == "lri1" || name == "lri2") return registry_lookup(name, mu, pad);
  if (name == "slri1") return Stepper::slri1(mu, pad);
  if (name == "slri2") return Stepper::slri2(mu, pad);
  if (name.rfind("sym-", 0) == 0) return Stepper::generic(registry_lookup(name.substr(4), mu, pad));
  throw ConfigError("unknown stepper '" + name + "'");
}

inline const std::vector<std::string>& known_schemes() {
  static const std::vector<std::string> names{"lri1", "lri2", "slri1", "slri2", "sym-lri1",
                                              "sym-lri2"};
  return names;
}

/// Expected global order in the smooth regime.
inline int expected_order(const std::string& name) {
  if (name == "lri1") return 1;
  return 2;
}

/// n_steps = 0 returns u0 unchanged.
inline EvolveResult run_scheme(const Scheme& scheme, const Field& u0, double tau,
                               std::size_t n_steps, const EvolveOptions& options = {}) {
  if (n_steps == 0) {
    RunRecord rec;
    rec.tau = tau;
    return {u0, std::move(rec)};
  }
  return std::visit(
      [&](const auto& s) -> EvolveResult {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FlowPair>)
          return evolve_flow(s, u0, tau, n_steps, options);
        else
          return evolve(s, u0, tau, n_steps, options);
      },
      scheme);
}

} // namespace lowreg
