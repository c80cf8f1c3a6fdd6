#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

/// Scalar functions applied as diagonal multipliers of the Laplacian.
enum class SymbolKind { Exp, Phi1, Phi2, PhiS };

namespace phi {

inline constexpr double series_threshold = 1e-8;

/// e^z - 1 without cancellation near z = 0.
inline Complex expm1(Complex z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

/// (e^z - 1) / z, equal to 1 at z = 0.
inline Complex phi1(Complex z) {
  if (std::abs(z) < series_threshold) return 1.0 + z * (0.5 + z / 6.0);
  return expm1(z) / z;
}

/// (e^z - phi1(z)) / z = integral_0^1 theta e^{theta z} d theta, equal to 1/2
/// at z = 0. This is not the (phi1(z) - 1) / z of exponential integrators.
inline Complex phi2(Complex z) {
  const double r = std::abs(z);
  if (r < series_threshold) return 0.5 + z * (1.0 / 3.0 + z / 8.0);
  if (r < 1.0) {
    // sum_{n>=0} (n+1) z^n / (n+2)!
    Complex power = 1.0, sum = 0.5;
    double fact = 2.0;
    for (int n = 1; n < 30; ++n) {
      power *= z;
      fact *= static_cast<double>(n + 2);
      const Complex term = power * (static_cast<double>(n + 1) / fact);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) - phi1(z)) / z;
}

/// sin(x) / x, equal to 1 at x = 0.
inline double phis(double x) {
  if (std::abs(x) < series_threshold) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

inline Complex evaluate(SymbolKind kind, Complex z) {
  switch (kind) {
  case SymbolKind::Exp: return std::exp(z);
  case SymbolKind::Phi1: return phi1(z);
  case SymbolKind::Phi2: return phi2(z);
  case SymbolKind::PhiS:
    if (z.imag() != 0.0) throw ConfigError("phi_s requires a real argument");
    return phis(z.real());
  }
  return {};
}

} // namespace phi

inline std::string_view to_string(SymbolKind kind) {
  switch (kind) {
  case SymbolKind::Exp: return "exp";
  case SymbolKind::Phi1: return "phi1";
  case SymbolKind::Phi2: return "phi2";
  case SymbolKind::PhiS: return "phis";
  }
  return "?";
}

using Multiplier = std::vector<Complex>;

/// Per-mode values of phi_kind(c * Delta), i.e. phi_kind(-c |k|^2).
inline Multiplier make_multiplier(const Grid& grid, SymbolKind kind, Complex c) {
  if (kind == SymbolKind::PhiS && c.imag() != 0.0)
    throw ConfigError("apply_symbol: phi_s needs a real scale, got imaginary part " +
                      std::to_string(c.imag()));
  const auto& ksq = grid.k_squared();
  Multiplier m(ksq.size());
  for (std::size_t i = 0; i < ksq.size(); ++i) {
    if (ksq[i] == 0.0) {
      m[i] = kind == SymbolKind::Phi2 ? 0.5 : 1.0;
      continue;
    }
    if (kind == SymbolKind::PhiS) {
      m[i] = phi::phis(-c.real() * ksq[i]);
    } else {
      m[i] = phi::evaluate(kind, -c * ksq[i]);
    }
  }
  return m;
}

inline Field apply_multiplier(Field f, std::span<const Complex> m) {
  if (m.size() != f.size()) throw ConfigError("apply_multiplier: size mismatch");
  auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= m[i];
  return f;
}

/// phi_kind(c * Delta) applied to f.
inline Field apply_symbol(const Field& f, SymbolKind kind, Complex c) {
  require_finite(f, "apply_symbol");
  return apply_multiplier(f, make_multiplier(f.grid(), kind, c));
}

} // namespace lowreg
