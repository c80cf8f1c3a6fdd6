#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "lowreg/field_io.hpp"
#include "lowreg/norms.hpp"
#include "lowreg/rng.hpp"

namespace lowreg {

struct RandomDataSpec {
  double alpha = 1.0;
  std::uint64_t seed = 0;
  /// Maximum frequency of the drawn datum; 0 means the grid Nyquist. Larger
  /// values draw the full sequence and truncate it to the grid.
  long n_ref = 0;
};

/// Random datum with phi_l = xi_l / <l>^{alpha + 1/2}, xi_l = U(-1,1) + i U(-1,1),
/// normalized to unit coefficient L2 norm.
///
/// Draw order: for each mode l = -n_ref, ..., n_ref - 1 (row-major over axes in
/// 2D) the real part is drawn before the imaginary part. <l> = |l| for l != 0
/// and 1 at l = 0. Modes outside the grid's range are drawn and discarded.
inline Field random_h_alpha(const GridPtr& grid, const RandomDataSpec& spec) {
  if (!grid) throw ConfigError("random_h_alpha: null grid");
  if (!(spec.alpha >= 0.0)) throw ConfigError("random_h_alpha: alpha must be >= 0");
  if (spec.n_ref < 0) throw ConfigError("random_h_alpha: n_ref must be >= 0");

  Xoshiro256 rng(spec.seed);
  Field phi(grid);
  const double expo = spec.alpha + 0.5;

  std::vector<long> ref(grid->dim());
  for (int a = 0; a < grid->dim(); ++a) ref[a] = spec.n_ref > 0 ? spec.n_ref : grid->nyquist(a);

  auto in_grid = [&](int a, long l) { return l >= -grid->nyquist(a) && l < grid->nyquist(a); };
  auto draw = [&](double bracket) {
    const double re = rng.uniform_pm1();
    const double im = rng.uniform_pm1();
    return Complex{re, im} / std::pow(bracket, expo);
  };

  if (grid->dim() == 1) {
    for (long l = -ref[0]; l < ref[0]; ++l) {
      const Complex c = draw(l == 0 ? 1.0 : static_cast<double>(std::labs(l)));
      if (in_grid(0, l)) phi.mode(l) = c;
    }
  } else {
    for (long l0 = -ref[0]; l0 < ref[0]; ++l0) {
      for (long l1 = -ref[1]; l1 < ref[1]; ++l1) {
        const double r = std::hypot(static_cast<double>(l0), static_cast<double>(l1));
        const Complex c = draw(r == 0.0 ? 1.0 : r);
        if (in_grid(0, l0) && in_grid(1, l1))
          phi[grid->flat_index(grid->slot_of_mode(0, l0), grid->slot_of_mode(1, l1))] = c;
      }
    }
  }

  const double norm = sobolev_norm(phi, 0.0);
  if (norm == 0.0) throw NumericalError("random_h_alpha: degenerate draw");
  return phi *= 1.0 / norm;
}

/// Single mode u_k = a. Evolves exactly as a e^{i(kx - (k^2 + mu a^2) t)}.
inline Field plane_wave(const GridPtr& grid, double amplitude, long mode) {
  if (!grid || grid->dim() != 1) throw ConfigError("plane_wave: requires a 1D grid");
  if (std::labs(mode) >= grid->nyquist(0))
    throw ConfigError("plane_wave: mode " + std::to_string(mode) + " is not below the Nyquist");
  Field f(grid);
  f.mode(mode) = amplitude;
  return f;
}

/// Exact NLSE solution from plane_wave data at time t.
inline Field plane_wave_exact(const GridPtr& grid, double amplitude, long mode, double mu,
                              double t) {
  Field f = plane_wave(grid, amplitude, mode);
  const double k = grid->wavenumber(0, grid->slot_of_mode(0, mode));
  const double omega = k * k + mu * amplitude * amplitude;
  f.mode(mode) = amplitude * std::exp(Complex{0.0, -omega * t});
  return f;
}

} // namespace lowreg
