#pragma once

#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <variant>

#include "lowreg/flows.hpp"
#include "lowreg/observables.hpp"

namespace lowreg {

/// Two-step symmetrization of an arbitrary one-step flow:
///   u^{n+1} = e^{2i tau Delta} u^{n-1} + Phi~_tau(u^n) - e^{2i tau Delta} Phi~_{-tau}(u^n)
struct GenericSymmetrized {
  FlowPair flow;
};

/// u^{n+1} = e^{2i tau Delta} u^{n-1} - 2i mu tau e^{i tau Delta}((u^n)^2 phi_s(2 tau Delta) conj u^n)
struct SLRI1Direct {
  double mu{};
  double pad = 1.0;
};

/// Second-order symmetric scheme written out term by term (no quintic term).
struct SLRI2Direct {
  double mu{};
  double pad = 1.0;
};

class Stepper {
public:
  using Strategy = std::variant<GenericSymmetrized, SLRI1Direct, SLRI2Direct>;

  explicit Stepper(Strategy s) : strategy_(std::move(s)) {}

  static Stepper generic(FlowPair flow) { return Stepper(GenericSymmetrized{std::move(flow)}); }
  static Stepper slri1(double mu, double pad = 1.0) { return Stepper(SLRI1Direct{mu, pad}); }
  static Stepper slri2(double mu, double pad = 1.0) { return Stepper(SLRI2Direct{mu, pad}); }

  [[nodiscard]] const Strategy& strategy() const noexcept { return strategy_; }

  [[nodiscard]] std::string name() const {
    return std::visit(
        [](const auto& s) -> std::string {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, GenericSymmetrized>) return "sym-" + s.flow.name;
          else if constexpr (std::is_same_v<T, SLRI1Direct>) return "slri1";
          else return "slri2";
        },
        strategy_);
  }

  [[nodiscard]] double mu() const {
    return std::visit(
        [](const auto& s) {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, GenericSymmetrized>)
            return s.flow.mu;
          else
            return s.mu;
        },
        strategy_);
  }

  /// One-step flow used for u^1.
  [[nodiscard]] FlowPair starter() const {
    return std::visit(
        [](const auto& s) -> FlowPair {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, GenericSymmetrized>) return s.flow;
          else if constexpr (std::is_same_v<T, SLRI1Direct>) return make_lri1_flow(s.mu, s.pad);
          else return make_lri2_flow(s.mu, s.pad);
        },
        strategy_);
  }

private:
  Strategy strategy_;
};

/// Rolling pair (u^{n-1}, u^n). Exists only after initialization (n >= 1).
struct TwoStepState {
  Field u_prev;
  Field u_curr;
  std::size_t n{};
  double tau{};
  double initial_norm{};
  std::shared_ptr<const StepOperators> ops;
};

inline constexpr double divergence_factor = 1e6;

namespace detail {

/// Phi^{2-step}_t(u_curr, u_prev) for signed t. `fwd` holds the operators for
/// t and `bwd` those for -t.
inline Field two_step_update(const Stepper& stepper, const Field& u_prev, const Field& u_curr,
                             const FlowOperators& fwd, const FlowOperators& bwd) {
  const Complex i{0.0, 1.0};
  const double t = fwd.t;
  Field next = apply_multiplier(u_prev, fwd.prop2);

  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GenericSymmetrized>) {
          next += s.flow.tilde(u_curr, fwd);
          next -= apply_multiplier(s.flow.tilde(u_curr, bwd), fwd.prop2);
        } else if constexpr (std::is_same_v<T, SLRI1Direct>) {
          if (s.mu == 0.0) return;
          const Field w = apply_multiplier(conj_field(u_curr), fwd.phis);
          Field nl = apply_multiplier(
              pointwise_triple(u_curr, u_curr, w, ProductPattern::abc, s.pad), fwd.prop);
          next += nl *= (-2.0 * i * s.mu * t);
        } else {
          if (s.mu == 0.0) return;
          const Field ubar = conj_field(u_curr);

          Multiplier re_diff(fwd.phi1.size());
          for (std::size_t k = 0; k < re_diff.size(); ++k)
            re_diff[k] = fwd.phi1[k].real() - fwd.phi2[k].real();
          Field first = apply_multiplier(
              pointwise_triple(u_curr, u_curr, apply_multiplier(ubar, re_diff),
                               ProductPattern::abc, s.pad),
              fwd.prop);
          first *= -2.0 * i * s.mu * t;

          const Field pu = apply_multiplier(u_curr, fwd.prop);
          const Field pw = apply_multiplier(ubar, combine(fwd.prop, fwd.phi2));
          Field second = pointwise_triple(pu, pu, pw, ProductPattern::abc, s.pad);
          second *= -i * s.mu * t;

          const Field mu_ = apply_multiplier(u_curr, bwd.prop);
          const Field mw = apply_multiplier(ubar, combine(bwd.prop, bwd.phi2));
          Field third = apply_multiplier(
              pointwise_triple(mu_, mu_, mw, ProductPattern::abc, s.pad), fwd.prop2);
          third *= -i * s.mu * t;

          next += first;
          next += second;
          next += third;
        }
      },
      stepper.strategy());
  return next;
}

inline void check_growth(const Field& f, double initial_norm, std::size_t step) {
  if (!f.all_finite())
    throw DivergenceError("non-finite values at step " + std::to_string(step), step);
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  if (std::sqrt(s) > divergence_factor * initial_norm)
    throw DivergenceError("L2 norm exceeded 1e6 x initial at step " + std::to_string(step), step);
}

} // namespace detail

/// u^0 = u0, u^1 from the stepper's one-step flow.
inline TwoStepState initialize(const Stepper& stepper, const Field& u0, double tau) {
  if (!(tau > 0.0)) throw ConfigError("initialize: tau must be positive");
  require_finite(u0, "initialize");
  auto ops = std::make_shared<const StepOperators>(u0.grid(), tau);
  const double norm0 = sobolev_norm(u0, 0.0);
  Field u1 = full_flow(stepper.starter(), u0, ops->forward);
  detail::check_growth(u1, norm0, 1);
  return {u0, std::move(u1), 1, tau, norm0, std::move(ops)};
}

inline TwoStepState step(const Stepper& stepper, const TwoStepState& s) {
  if (!s.ops) throw ConfigError("step: state was not initialized");
  Field next = detail::two_step_update(stepper, s.u_prev, s.u_curr, s.ops->forward, s.ops->backward);
  detail::check_growth(next, s.initial_norm, s.n + 1);
  return {s.u_curr, std::move(next), s.n + 1, s.tau, s.initial_norm, s.ops};
}

/// ||u^{n-1} - Phi^{2-step}_{-tau}(u^n, Phi^{2-step}_tau(u^n, u^{n-1}))||_{L2}
inline double symmetry_residual(const Stepper& stepper, const TwoStepState& s) {
  if (!s.ops) throw ConfigError("symmetry_residual: state was not initialized");
  const auto& ops = *s.ops;
  const Field ahead = detail::two_step_update(stepper, s.u_prev, s.u_curr, ops.forward, ops.backward);
  const Field back = detail::two_step_update(stepper, ahead, s.u_curr, ops.backward, ops.forward);
  return sobolev_norm(s.u_prev - back, 0.0);
}

/// Steps the pair backwards in time: (u^n, u^{n+1}) -> (u^{n-1}, u^n).
inline TwoStepState step_backward(const Stepper& stepper, const TwoStepState& s) {
  if (!s.ops) throw ConfigError("step_backward: state was not initialized");
  if (s.n <= 1) throw ConfigError("step_backward: state is already (u^0, u^1)");
  Field earlier =
      detail::two_step_update(stepper, s.u_curr, s.u_prev, s.ops->backward, s.ops->forward);
  return {std::move(earlier), s.u_prev, s.n - 1, s.tau, s.initial_norm, s.ops};
}

struct EvolveOptions {
  /// Sample every `stride` steps; 0 records only the initial and final state.
  std::size_t stride = 1;
  bool record_observables = true;
  std::function<void(std::size_t n, double t, const Field&)> observer;
};

struct EvolveResult {
  Field final;
  RunRecord record;
};

namespace detail {

class Sampler {
public:
  Sampler(const EvolveOptions& opt, double tau, std::size_t n_steps, double mu)
      : opt_(opt), tau_(tau), n_steps_(n_steps), mu_(mu) {}

  void operator()(std::size_t n, const Field& f, RunRecord& rec) const {
    const bool due = n == 0 || n == n_steps_ || (opt_.stride > 0 && n % opt_.stride == 0);
    if (!due) return;
    const double t = static_cast<double>(n) * tau_;
    if (opt_.record_observables) rec.samples.push_back(sample_observables(f, t, mu_));
    if (opt_.observer) opt_.observer(n, t, f);
  }

  void force(std::size_t n, const Field& f, RunRecord& rec) const {
    const double t = static_cast<double>(n) * tau_;
    if (opt_.record_observables && (rec.samples.empty() || rec.samples.back().t != t))
      rec.samples.push_back(sample_observables(f, t, mu_));
  }

private:
  const EvolveOptions& opt_;
  double tau_;
  std::size_t n_steps_;
  double mu_;
};

} // namespace detail

/// Initialize, then step n_steps - 1 times. On divergence the record is
/// flagged and `final` holds the last finite state.
inline EvolveResult evolve(const Stepper& stepper, const Field& u0, double tau,
                           std::size_t n_steps, const EvolveOptions& options = {}) {
  if (n_steps < 1) throw ConfigError("evolve: n_steps must be >= 1");
  RunRecord rec;
  rec.scheme = stepper.name();
  rec.tau = tau;
  rec.mu = stepper.mu();
  const detail::Sampler sample(options, tau, n_steps, stepper.mu());
  sample(0, u0, rec);

  TwoStepState state{u0, u0, 0, tau, 0.0, nullptr};
  try {
    state = initialize(stepper, u0, tau);
    rec.steps_completed = 1;
    sample(1, state.u_curr, rec);
    while (state.n < n_steps) {
      state = step(stepper, state);
      rec.steps_completed = state.n;
      sample(state.n, state.u_curr, rec);
    }
  } catch (const DivergenceError& e) {
    rec.diverged = true;
    rec.message = e.what();
    sample.force(state.n, state.u_curr, rec);
  }
  return {state.u_curr, std::move(rec)};
}

/// Plain one-step iteration u^{n+1} = Phi_tau(u^n).
inline EvolveResult evolve_flow(const FlowPair& flow, const Field& u0, double tau,
                                std::size_t n_steps, const EvolveOptions& options = {}) {
  if (!(tau > 0.0)) throw ConfigError("evolve_flow: tau must be positive");
  if (n_steps < 1) throw ConfigError("evolve_flow: n_steps must be >= 1");
  require_finite(u0, "evolve_flow");
  RunRecord rec;
  rec.scheme = flow.name;
  rec.tau = tau;
  rec.mu = flow.mu;
  const detail::Sampler sample(options, tau, n_steps, flow.mu);
  sample(0, u0, rec);

  const FlowOperators ops = make_flow_operators(u0.grid(), tau);
  const double norm0 = sobolev_norm(u0, 0.0);
  Field u = u0;
  std::size_t n = 0;
  try {
    while (n < n_steps) {
      Field next = full_flow(flow, u, ops);
      detail::check_growth(next, norm0, n + 1);
      u = std::move(next);
      ++n;
      rec.steps_completed = n;
      sample(n, u, rec);
    }
  } catch (const DivergenceError& e) {
    rec.diverged = true;
    rec.message = e.what();
    sample.force(n, u, rec);
  }
  return {std::move(u), std::move(rec)};
}

} // namespace lowreg
