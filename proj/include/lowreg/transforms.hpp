#pragma once

#include <span>
#include <vector>

#include "lowreg/fft.hpp"
#include "lowreg/field.hpp"

namespace lowreg {

/// Values u(x_j) at the grid points, row-major, x_j = j L / N.
inline std::vector<Complex> to_physical(const Field& f) {
  require_finite(f, "to_physical");
  std::vector<Complex> values(f.size());
  detail::dft(f.grid().shape(), FFTW_BACKWARD, f.coeffs(), values);
  return values;
}

inline Field from_physical(const GridPtr& grid, std::span<const Complex> values) {
  if (!grid) throw ConfigError("from_physical: null grid");
  if (values.size() != grid->size())
    throw ConfigError("from_physical: got " + std::to_string(values.size()) +
                      " values for a grid of " + std::to_string(grid->size()) + " points");
  Field f(grid);
  detail::dft(grid->shape(), FFTW_FORWARD, values, f.coeffs());
  const double scale = 1.0 / static_cast<double>(grid->size());
  for (auto& c : f.coeffs()) c *= scale;
  require_finite(f, "from_physical");
  return f;
}

} // namespace lowreg
