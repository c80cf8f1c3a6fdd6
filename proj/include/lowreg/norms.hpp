#pragma once

#include <cmath>

#include "lowreg/field.hpp"

namespace lowreg {

/// sqrt(sum_k (1 + |k|^2)^alpha |u_k|^2). Coefficient convention, no L^d factor.
inline double sobolev_norm(const Field& f, double alpha) {
  if (!(alpha >= 0.0)) throw ConfigError("sobolev_norm: alpha must be >= 0");
  require_finite(f, "sobolev_norm");
  const auto& ksq = f.grid().k_squared();
  double s = 0.0;
  if (alpha == 0.0) {
    for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]);
  } else {
    for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(1.0 + ksq[i], alpha) * std::norm(f[i]);
  }
  return std::sqrt(s);
}

/// Integral of |grad u|^2 over the torus: L^d sum_k |k|^2 |u_k|^2.
inline double spectral_gradient_norm_sq(const Field& f) {
  require_finite(f, "spectral_gradient_norm_sq");
  const auto& ksq = f.grid().k_squared();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += ksq[i] * std::norm(f[i]);
  return f.grid().volume() * s;
}

} // namespace lowreg
