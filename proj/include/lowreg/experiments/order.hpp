#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "lowreg/error.hpp"

namespace lowreg {

struct ErrorPoint {
  double tau{};
  double error{};
};

/// Errors below this are treated as roundoff and excluded from order fits.
inline constexpr double roundoff_floor = 1e-10;

/// Least-squares slope of log(error) against log(tau) over rows above the
/// roundoff floor.
inline double order_estimate(std::span<const ErrorPoint> rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (!(r.error >= roundoff_floor) || !std::isfinite(r.error) || !(r.tau > 0.0)) continue;
    xs.push_back(std::log(r.tau));
    ys.push_back(std::log(r.error));
  }
  if (xs.size() < 2)
    throw NumericalError("order_estimate: fewer than two rows above the roundoff floor");
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw NumericalError("order_estimate: step sizes are not distinct");
  return sxy / sxx;
}

} // namespace lowreg
