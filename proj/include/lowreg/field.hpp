#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "lowreg/error.hpp"
#include "lowreg/grid.hpp"

namespace lowreg {

using Complex = std::complex<double>;

/// Spectral coefficients of a periodic function, in the grid's storage order.
/// Normalization: u_hat_k = (1/N) sum_j u(x_j) e^{-i k x_j}, so that
/// u(x_j) = sum_k u_hat_k e^{i k x_j}.
class Field {
public:
  explicit Field(GridPtr grid) : grid_(std::move(grid)) {
    if (!grid_) throw ConfigError("field: null grid");
    coeffs_.assign(grid_->size(), Complex{});
  }

  Field(GridPtr grid, std::vector<Complex> coeffs)
      : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (!grid_) throw ConfigError("field: null grid");
    if (coeffs_.size() != grid_->size())
      throw ConfigError("field: coefficient count " + std::to_string(coeffs_.size()) +
                        " does not match grid size " + std::to_string(grid_->size()));
  }

  [[nodiscard]] const GridPtr& grid_ptr() const noexcept { return grid_; }
  [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
  [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

  [[nodiscard]] std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] std::span<Complex> coeffs() noexcept { return coeffs_; }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient of signed mode m (1D grids).
  [[nodiscard]] Complex& mode(long m) { return coeffs_[grid_->slot_of_mode(0, m)]; }
  [[nodiscard]] const Complex& mode(long m) const { return coeffs_[grid_->slot_of_mode(0, m)]; }

  [[nodiscard]] bool all_finite() const noexcept {
    for (const auto& c : coeffs_)
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
  }

  Field& operator+=(const Field& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Field& operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Complex s, Field a) { return a *= s; }
  friend Field operator*(Field a, Complex s) { return a *= s; }

private:
  void check_compatible(const Field& o) const {
    if (!same_grid(grid_, o.grid_)) throw ConfigError("field: grid mismatch");
  }

  GridPtr grid_;
  std::vector<Complex> coeffs_;
};

inline void require_finite(const Field& f, const char* where) {
  if (!f.all_finite())
    throw NumericalError(std::string(where) + ": field contains non-finite coefficients");
}

inline void require_same_grid(const Field& a, const Field& b, const char* where) {
  if (!same_grid(a.grid_ptr(), b.grid_ptr()))
    throw ConfigError(std::string(where) + ": fields live on different grids");
}

} // namespace lowreg
