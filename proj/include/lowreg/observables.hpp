#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "lowreg/norms.hpp"
#include "lowreg/transforms.hpp"

namespace lowreg {

// Mass and energy are physical integrals (with the L^d factor). Error norms
// use the coefficient convention of sobolev_norm (no L^d factor).

/// Integral of |u|^2: L^d sum_k |u_k|^2.
inline double mass(const Field& f) {
  require_finite(f, "mass");
  double s = 0.0;
  for (const auto& c : f.coeffs()) s += std::norm(c);
  return f.grid().volume() * s;
}

/// Collocation quadrature of the integral of |u|^4.
inline double quartic_integral(const Field& f) {
  const auto values = to_physical(f);
  double s = 0.0;
  for (const auto& v : values) {
    const double r2 = std::norm(v);
    s += r2 * r2;
  }
  return f.grid().volume() / static_cast<double>(f.size()) * s;
}

/// Integral of |grad u|^2 + (mu / 2) |u|^4.
inline double energy(const Field& f, double mu) {
  const double grad = spectral_gradient_norm_sq(f);
  if (mu == 0.0) return grad;
  return grad + 0.5 * mu * quartic_integral(f);
}

struct ErrorNorm {
  enum class Kind { L2, H1, Halpha } kind = Kind::L2;
  double alpha = 0.0;

  static ErrorNorm l2() { return {Kind::L2, 0.0}; }
  static ErrorNorm h1() { return {Kind::H1, 1.0}; }
  static ErrorNorm h(double a) { return {Kind::Halpha, a}; }

  [[nodiscard]] double order() const {
    switch (kind) {
    case Kind::L2: return 0.0;
    case Kind::H1: return 1.0;
    case Kind::Halpha: return alpha;
    }
    return alpha;
  }
};

inline double error_norm(const Field& f, const Field& ref, ErrorNorm norm) {
  require_same_grid(f, ref, "error_norm");
  return sobolev_norm(f - ref, norm.order());
}

/// |q_n - baseline| / |baseline|.
inline std::vector<double> relative_deviation(const std::vector<double>& series, double baseline) {
  if (baseline == 0.0) throw ConfigError("relative_deviation: zero baseline");
  std::vector<double> out;
  out.reserve(series.size());
  for (double q : series) out.push_back(std::abs(q - baseline) / std::abs(baseline));
  return out;
}

struct ObservableSample {
  double t{};
  double mass{};
  double energy{};
  std::map<std::string, double> extra;
};

/// Observables recorded along one trajectory.
struct RunRecord {
  std::string scheme;
  double tau{};
  double mu{};
  std::vector<ObservableSample> samples;
  std::size_t steps_completed{};
  bool diverged{};
  std::string message;

  [[nodiscard]] std::vector<double> times() const {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(s.t);
    return v;
  }
  [[nodiscard]] std::vector<double> masses() const {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(s.mass);
    return v;
  }
  [[nodiscard]] std::vector<double> energies() const {
    std::vector<double> v;
    for (const auto& s : samples) v.push_back(s.energy);
    return v;
  }
};

inline ObservableSample sample_observables(const Field& f, double t, double mu) {
  return {t, mass(f), energy(f, mu), {}};
}

} // namespace lowreg
