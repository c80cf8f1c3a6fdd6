#pragma once

#include <cmath>
#include <vector>

#include "lowreg/transforms.hpp"

namespace lowreg {

enum class ProductPattern {
  ab_conj_c, ///< a * b * conj(c)
  abc,       ///< a * b * c
  quintic,   ///< |a|^4 a (b and c ignored)
};

/// Field with physical values conj(f(x)): g_k = conj(f_{-k}).
inline Field conj_field(const Field& f) {
  const Grid& g = f.grid();
  Field out(f.grid_ptr());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    std::size_t target;
    if (g.dim() == 1) {
      target = (g.points(0) - idx) % g.points(0);
    } else {
      const auto j0 = g.axis_index(idx, 0), j1 = g.axis_index(idx, 1);
      target = g.flat_index((g.points(0) - j0) % g.points(0), (g.points(1) - j1) % g.points(1));
    }
    out[target] = std::conj(f[idx]);
  }
  return out;
}

namespace detail {

inline std::size_t padded_points(std::size_t n, double factor) {
  if (factor <= 1.0) return n;
  auto m = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * factor));
  return m + (m % 2);
}

/// Physical-space transforms on a (possibly) zero-padded copy of a grid.
class PaddedTransform {
public:
  PaddedTransform(const Grid& grid, double factor) {
    if (!(factor >= 1.0)) throw ConfigError("padding factor must be >= 1");
    for (int a = 0; a < grid.dim(); ++a) shape_.push_back(padded_points(grid.points(a), factor));
    total_ = 1;
    for (auto s : shape_) total_ *= s;
    padded_ = total_ != grid.size();
    if (padded_) {
      slot_.resize(grid.size());
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        std::size_t flat = 0;
        for (int a = 0; a < grid.dim(); ++a) {
          const long m = grid.mode_of_slot(a, grid.axis_index(idx, a));
          const auto big = static_cast<long>(shape_[a]);
          flat = flat * shape_[a] + static_cast<std::size_t>((m + big) % big);
        }
        slot_[idx] = flat;
      }
    }
  }

  [[nodiscard]] std::size_t size() const noexcept { return total_; }

  std::vector<Complex> to_physical(const Field& f) const {
    require_finite(f, "pointwise product");
    std::vector<Complex> spec;
    std::span<const Complex> src = f.coeffs();
    if (padded_) {
      spec.assign(total_, Complex{});
      for (std::size_t i = 0; i < f.size(); ++i) spec[slot_[i]] = f[i];
      src = spec;
    }
    std::vector<Complex> values(total_);
    dft(shape_, FFTW_BACKWARD, src, values);
    return values;
  }

  Field from_physical(const GridPtr& grid, std::span<const Complex> values) const {
    Field out(grid);
    const double scale = 1.0 / static_cast<double>(total_);
    if (!padded_) {
      dft(shape_, FFTW_FORWARD, values, out.coeffs());
    } else {
      std::vector<Complex> spec(total_);
      dft(shape_, FFTW_FORWARD, values, spec);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec[slot_[i]];
    }
    for (auto& c : out.coeffs()) c *= scale;
    return out;
  }

private:
  std::vector<std::size_t> shape_;
  std::size_t total_{};
  bool padded_{};
  std::vector<std::size_t> slot_;
};

} // namespace detail

/// Pseudospectral product: transform operands to physical space, combine
/// pointwise, transform back. pad_factor > 1 zero-pads the spectrum first
/// (1.5 is the usual 3/2 rule); 1 means no dealiasing.
inline Field pointwise_triple(const Field& a, const Field& b, const Field& c,
                              ProductPattern pattern, double pad_factor = 1.0) {
  require_same_grid(a, b, "pointwise_triple");
  require_same_grid(a, c, "pointwise_triple");
  const detail::PaddedTransform tr(a.grid(), pad_factor);

  auto va = tr.to_physical(a);
  if (pattern == ProductPattern::quintic) {
    for (auto& x : va) {
      const double r2 = std::norm(x);
      x *= r2 * r2;
    }
    return tr.from_physical(a.grid_ptr(), va);
  }
  const auto vb = (&b == &a) ? va : tr.to_physical(b);
  const auto vc = (&c == &a) ? va : (&c == &b) ? vb : tr.to_physical(c);
  if (pattern == ProductPattern::ab_conj_c) {
    for (std::size_t j = 0; j < va.size(); ++j) va[j] = va[j] * vb[j] * std::conj(vc[j]);
  } else {
    for (std::size_t j = 0; j < va.size(); ++j) va[j] = va[j] * vb[j] * vc[j];
  }
  return tr.from_physical(a.grid_ptr(), va);
}

inline Field pointwise_quintic(const Field& a, double pad_factor = 1.0) {
  return pointwise_triple(a, a, a, ProductPattern::quintic, pad_factor);
}

} // namespace lowreg
