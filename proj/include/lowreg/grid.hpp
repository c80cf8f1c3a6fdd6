#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "lowreg/error.hpp"

namespace lowreg {

/// Periodic mesh on [0, L1) x [0, L2). Modes are stored in FFT order per
/// axis (m = 0, 1, ..., N/2-1, -N/2, ..., -1), row-major with axis 0
/// slowest. Wavenumber on an axis is k = (2 pi / L) m.
class Grid {
public:
  static constexpr int max_dim = 2;

  Grid(int dim, std::vector<std::size_t> points, std::vector<double> lengths)
      : dim_(dim), points_(std::move(points)), lengths_(std::move(lengths)) {
    if (dim_ < 1 || dim_ > max_dim)
      throw ConfigError("unsupported grid dimension " + std::to_string(dim_));
    if (points_.size() != static_cast<std::size_t>(dim_) ||
        lengths_.size() != static_cast<std::size_t>(dim_))
      throw ConfigError("grid: expected one point count and one length per axis");
    for (int a = 0; a < dim_; ++a) {
      if (points_[a] < 4 || points_[a] % 2 != 0)
        throw ConfigError("grid: point count must be even and >= 4, got " +
                          std::to_string(points_[a]));
      if (!(lengths_[a] > 0.0) || !std::isfinite(lengths_[a]))
        throw ConfigError("grid: axis length must be positive");
    }
    total_ = 1;
    for (auto n : points_) total_ *= n;

    k_sq_.assign(total_, 0.0);
    for (std::size_t idx = 0; idx < total_; ++idx) {
      double s = 0.0;
      for (int a = 0; a < dim_; ++a) {
        const double k = wavenumber(a, axis_index(idx, a));
        s += k * k;
      }
      k_sq_[idx] = s;
    }
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t points(int axis) const { return points_.at(axis); }
  [[nodiscard]] double length(int axis) const { return lengths_.at(axis); }
  [[nodiscard]] const std::vector<std::size_t>& shape() const noexcept { return points_; }
  [[nodiscard]] const std::vector<double>& lengths() const noexcept { return lengths_; }
  [[nodiscard]] std::size_t size() const noexcept { return total_; }

  /// Product of the axis lengths (L^d).
  [[nodiscard]] double volume() const noexcept {
    double v = 1.0;
    for (double l : lengths_) v *= l;
    return v;
  }

  [[nodiscard]] long nyquist(int axis) const { return static_cast<long>(points_.at(axis) / 2); }

  /// Signed integer mode m of storage slot j on an axis.
  [[nodiscard]] long mode_of_slot(int axis, std::size_t j) const {
    const auto n = points_.at(axis);
    return j < n / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n);
  }

  /// Storage slot of signed mode m (aliased onto the axis if out of range).
  [[nodiscard]] std::size_t slot_of_mode(int axis, long m) const {
    const auto n = static_cast<long>(points_.at(axis));
    return static_cast<std::size_t>(((m % n) + n) % n);
  }

  [[nodiscard]] double wavenumber(int axis, std::size_t j) const {
    return 2.0 * std::numbers::pi / lengths_.at(axis) * static_cast<double>(mode_of_slot(axis, j));
  }

  /// Per-axis slot of a flat index.
  [[nodiscard]] std::size_t axis_index(std::size_t flat, int axis) const {
    if (dim_ == 1) return flat;
    return axis == 0 ? flat / points_[1] : flat % points_[1];
  }

  [[nodiscard]] std::size_t flat_index(std::size_t j0, std::size_t j1 = 0) const {
    return dim_ == 1 ? j0 : j0 * points_[1] + j1;
  }

  /// |k|^2 for every stored mode.
  [[nodiscard]] const std::vector<double>& k_squared() const noexcept { return k_sq_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.lengths_ == b.lengths_;
  }

private:
  int dim_;
  std::vector<std::size_t> points_;
  std::vector<double> lengths_;
  std::size_t total_{};
  std::vector<double> k_sq_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int dim, std::vector<std::size_t> points, std::vector<double> lengths) {
  return std::make_shared<const Grid>(dim, std::move(points), std::move(lengths));
}

/// One-dimensional grid, default period 2 pi.
inline GridPtr make_grid_1d(std::size_t n, double length = 2.0 * std::numbers::pi) {
  return make_grid(1, {n}, {length});
}

inline bool same_grid(const GridPtr& a, const GridPtr& b) {
  return a == b || (a && b && *a == *b);
}

} // namespace lowreg
