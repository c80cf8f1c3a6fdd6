#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lowreg/products.hpp"
#include "lowreg/symbols.hpp"

namespace lowreg {

/// Diagonal operators needed by the low-regularity flows for a signed step t.
struct FlowOperators {
  double t{};
  Multiplier prop;  ///< e^{i t Delta}
  Multiplier prop2; ///< e^{2 i t Delta}
  Multiplier phi1;  ///< phi1(-2 i t Delta)
  Multiplier phi2;  ///< phi2(-2 i t Delta)
  Multiplier phis;  ///< phi_s(2 t Delta), real valued
};

inline FlowOperators make_flow_operators(const Grid& grid, double t) {
  const Complex i{0.0, 1.0};
  FlowOperators ops;
  ops.t = t;
  ops.prop = make_multiplier(grid, SymbolKind::Exp, i * t);
  ops.prop2 = make_multiplier(grid, SymbolKind::Exp, 2.0 * i * t);
  ops.phi1 = make_multiplier(grid, SymbolKind::Phi1, -2.0 * i * t);
  ops.phi2 = make_multiplier(grid, SymbolKind::Phi2, -2.0 * i * t);
  ops.phis = make_multiplier(grid, SymbolKind::PhiS, 2.0 * t);
  return ops;
}

/// Operators for +t and -t, built once per (grid, step size).
struct StepOperators {
  FlowOperators forward;
  FlowOperators backward;
  StepOperators(const Grid& grid, double tau)
      : forward(make_flow_operators(grid, tau)), backward(make_flow_operators(grid, -tau)) {}

  [[nodiscard]] const FlowOperators& for_sign(double t) const {
    return t >= 0.0 ? forward : backward;
  }
};

namespace detail {

inline Multiplier combine(const Multiplier& a, const Multiplier& b) {
  Multiplier m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] * b[i];
  return m;
}

} // namespace detail

// Remainders Phi~_t of the flows Phi_t(v) = e^{it Delta} v + Phi~_t(v).
// Negative t is the formal substitution tau -> -tau in the defining formula.

/// -i mu t e^{it Delta}( v^2 phi1(-2it Delta) conj(v) )
inline Field lri1_tilde(const Field& v, const FlowOperators& ops, double mu, double pad = 1.0) {
  require_finite(v, "lri1_tilde");
  const double t = ops.t;
  if (t == 0.0 || mu == 0.0) return Field(v.grid_ptr());
  const Field w = apply_multiplier(conj_field(v), ops.phi1);
  Field out = apply_multiplier(pointwise_triple(v, v, w, ProductPattern::abc, pad), ops.prop);
  return out *= Complex{0.0, -mu * t};
}

/// -i mu t e^{it Delta}( v^2 [phi1 - phi2](-2it Delta) conj v )
///  - i mu t (e^{it Delta} v)^2 [e^{it Delta} phi2(-2it Delta) conj v]
///  - (mu^2 t^2 / 2) e^{it Delta} |v|^4 v
inline Field lri2_tilde(const Field& v, const FlowOperators& ops, double mu, double pad = 1.0) {
  require_finite(v, "lri2_tilde");
  const double t = ops.t;
  if (t == 0.0 || mu == 0.0) return Field(v.grid_ptr());
  const Field vbar = conj_field(v);

  Multiplier diff(ops.phi1.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = ops.phi1[i] - ops.phi2[i];
  Field first = apply_multiplier(
      pointwise_triple(v, v, apply_multiplier(vbar, diff), ProductPattern::abc, pad), ops.prop);

  const Field pv = apply_multiplier(v, ops.prop);
  const Field pw = apply_multiplier(vbar, detail::combine(ops.prop, ops.phi2));
  Field second = pointwise_triple(pv, pv, pw, ProductPattern::abc, pad);

  Field third = apply_multiplier(pointwise_quintic(v, pad), ops.prop);

  first += second;
  first *= Complex{0.0, -mu * t};
  third *= Complex{-0.5 * mu * mu * t * t, 0.0};
  return first += third;
}

inline Field lri1_tilde(const Field& v, double t, double mu, double pad = 1.0) {
  if (t == 0.0) return Field(v.grid_ptr());
  return lri1_tilde(v, make_flow_operators(v.grid(), t), mu, pad);
}

inline Field lri2_tilde(const Field& v, double t, double mu, double pad = 1.0) {
  if (t == 0.0) return Field(v.grid_ptr());
  return lri2_tilde(v, make_flow_operators(v.grid(), t), mu, pad);
}

/// One-step flow in decomposed form, evaluable for both signs of the step.
struct FlowPair {
  using Remainder = std::function<Field(const Field&, const FlowOperators&)>;

  std::string name;
  double mu{};
  int order{};
  bool order_parity_gain{};
  Remainder remainder;

  [[nodiscard]] Field tilde(const Field& v, const FlowOperators& ops) const {
    return remainder(v, ops);
  }
  [[nodiscard]] Field tilde(const Field& v, double t) const {
    if (t == 0.0) return Field(v.grid_ptr());
    return remainder(v, make_flow_operators(v.grid(), t));
  }
};

inline Field full_flow(const FlowPair& fp, const Field& v, const FlowOperators& ops) {
  return apply_multiplier(v, ops.prop) + fp.tilde(v, ops);
}

inline Field full_flow(const FlowPair& fp, const Field& v, double t) {
  if (t == 0.0) return v;
  return full_flow(fp, v, make_flow_operators(v.grid(), t));
}

inline FlowPair make_lri1_flow(double mu, double pad = 1.0) {
  return {"lri1", mu, 1, true,
          [mu, pad](const Field& v, const FlowOperators& ops) { return lri1_tilde(v, ops, mu, pad); }};
}

inline FlowPair make_lri2_flow(double mu, double pad = 1.0) {
  return {"lri2", mu, 2, false,
          [mu, pad](const Field& v, const FlowOperators& ops) { return lri2_tilde(v, ops, mu, pad); }};
}

/// Known flows: "lri1", "lri2".
inline FlowPair registry_lookup(const std::string& name, double mu, double pad = 1.0) {
  if (name == "lri1") return make_lri1_flow(mu, pad);
  if (name == "lri2") return make_lri2_flow(mu, pad);
  throw ConfigError("unknown flow '" + name + "'");
}

} // namespace lowreg
