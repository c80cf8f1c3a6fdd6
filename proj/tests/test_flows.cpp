#include <catch2/catch_amalgamated.hpp>

#include "lowreg/experiments/order.hpp"
#include "lowreg/flows.hpp"
#include "lowreg/initial_data.hpp"
#include "lowreg/norms.hpp"
#include "oracles.hpp"

using namespace lowreg;

namespace {

Field constant(const GridPtr& g, Complex c) {
  Field f(g);
  f.mode(0) = c;
  return f;
}

bool is_zero(const Field& f) {
  for (auto c : f.coeffs())
    if (c != Complex{}) return false;
  return true;
}

} // namespace

TEST_CASE("remainders vanish on the zero field", "[flows]") {
  const auto g = make_grid_1d(16);
  const Field zero(g);
  for (double t : {0.1, -0.1, 0.0}) {
    CHECK(is_zero(lri1_tilde(zero, t, 1.0)));
    CHECK(is_zero(lri2_tilde(zero, t, -1.0)));
  }
}

TEST_CASE("constant data", "[flows]") {
  const auto g = make_grid_1d(16);
  const Complex c{0.6, -0.3};
  const double mu = 1.3;
  const double a2 = std::norm(c);
  for (double t : {0.05, -0.05, 0.4}) {
    const Field u = constant(g, c);
    const Complex i{0.0, 1.0};

    const Field r1 = lri1_tilde(u, t, mu);
    CHECK(std::abs(r1.mode(0) - (-i * mu * t * a2 * c)) < 1e-15);

    const Field r2 = lri2_tilde(u, t, mu);
    const Complex expect2 = -i * mu * t * a2 * c - 0.5 * mu * mu * t * t * a2 * a2 * c;
    CHECK(std::abs(r2.mode(0) - expect2) < 1e-15);

    for (long m = 1; m < 8; ++m) {
      CHECK(std::abs(r1.mode(m)) < 1e-15);
      CHECK(std::abs(r2.mode(m)) < 1e-15);
    }

    const Field full = full_flow(make_lri1_flow(mu), u, t);
    CHECK(std::abs(full.mode(0) - (c - i * mu * t * a2 * c)) < 1e-15);
    // First-order agreement with the exact solution c e^{-i mu |c|^2 t}.
    const Complex exact = c * std::exp(-i * mu * a2 * t);
    CHECK(std::abs(full.mode(0) - exact) < mu * mu * a2 * a2 * std::abs(c) * t * t);
  }
}

TEST_CASE("lri1 on a single mode", "[flows]") {
  // e^{-0.1i} phi1(0.2i) = sin(0.1) / 0.1, so the coefficient is -i sin(0.1).
  const auto g = make_grid_1d(16);
  Field v(g);
  v.mode(1) = 1.0;
  const Field r = lri1_tilde(v, 0.1, 1.0);
  CHECK(std::abs(r.mode(1) - Complex{0.0, -0.0998334166468281578}) < 1e-15);
  for (long m = -8; m < 8; ++m)
    if (m != 1) CHECK(std::abs(r.mode(m)) < 1e-15);
}

TEST_CASE("full flow special cases", "[flows]") {
  const auto g = make_grid_1d(32);
  const Field u = oracle::random_field(g, 17);
  for (const auto& flow : {make_lri1_flow(0.0), make_lri2_flow(0.0)}) {
    const Field free = apply_symbol(u, SymbolKind::Exp, Complex{0.0, 0.3});
    CHECK(oracle::max_abs_diff(full_flow(flow, u, 0.3), free) == 0.0);
  }
  CHECK(oracle::max_abs_diff(full_flow(make_lri2_flow(1.0), u, 0.0), u) == 0.0);
}

TEST_CASE("flow registry", "[flows]") {
  const auto f1 = registry_lookup("lri1", 1.0);
  CHECK(f1.order == 1);
  CHECK(f1.order_parity_gain);
  const auto f2 = registry_lookup("lri2", 1.0);
  CHECK(f2.order == 2);
  CHECK_FALSE(f2.order_parity_gain);
  CHECK_THROWS_AS(registry_lookup("lri7", 1.0), ConfigError);
}

TEST_CASE("flow invariants on random data", "[flows][property]") {
  const auto g = make_grid_1d(32);
  const Complex phase = std::polar(1.0, 0.77);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Field v = oracle::random_field(g, 100 + seed, 1.5);
    const double t = 0.01 + 0.05 * seed;
    for (const auto& flow : {make_lri1_flow(1.0), make_lri2_flow(-1.0)}) {
      for (double s : {t, -t}) {
        const Field base = flow.tilde(v, s);
        // gauge covariance
        CHECK(oracle::max_abs_diff(flow.tilde(phase * v, s), phase * base) < 1e-12);
        // t and -(-t) are the same double
        CHECK(oracle::max_abs_diff(flow.tilde(v, -(-s)), base) == 0.0);
      }
    }
    // cubic scaling of the lri1 remainder under real scaling
    const double lam = 1.7;
    const Field scaled = lri1_tilde(lam * v, t, 1.0);
    CHECK(oracle::max_abs_diff(scaled, lam * lam * lam * lri1_tilde(v, t, 1.0)) < 1e-12);
  }
}

TEST_CASE("local order on the plane wave", "[flows][order]") {
  const auto g = make_grid_1d(32);
  const double mu = 1.0;
  const Field u0 = plane_wave(g, 1.0, 1);
  for (const auto& flow : {make_lri1_flow(mu), make_lri2_flow(mu)}) {
    std::vector<ErrorPoint> fwd, bwd;
    for (int e = 6; e <= 10; ++e) {
      const double tau = std::ldexp(1.0, -e);
      const Field ut = plane_wave_exact(g, 1.0, 1, mu, tau);
      fwd.push_back({tau, sobolev_norm(full_flow(flow, u0, tau) - ut, 0.0)});
      bwd.push_back({tau, sobolev_norm(full_flow(flow, ut, -tau) - u0, 0.0)});
    }
    INFO(flow.name);
    CHECK(std::abs(order_estimate(fwd) - (flow.order + 1)) <= 0.3);
    CHECK(std::abs(order_estimate(bwd) - (flow.order + 1)) <= 0.3);
  }
}

TEST_CASE("lri2 local order on smooth random data", "[flows][order]") {
  // Reference from many small lri2 steps; the single-step error should scale as tau^3.
  const auto g = make_grid_1d(32);
  const double mu = 1.0;
  RandomDataSpec spec{6.0, 3, 4};
  const Field u0 = random_h_alpha(g, spec);
  auto fine = [&](double tau) {
    Field u = u0;
    const int sub = 512;
    const auto ops = make_flow_operators(*g, tau / sub);
    const auto flow = make_lri2_flow(mu);
    for (int s = 0; s < sub; ++s) u = full_flow(flow, u, ops);
    return u;
  };
  std::vector<ErrorPoint> pts;
  for (int e = 3; e <= 6; ++e) {
    const double tau = std::ldexp(1.0, -e);
    pts.push_back({tau, sobolev_norm(full_flow(make_lri2_flow(mu), u0, tau) - fine(tau), 0.0)});
  }
  CHECK(std::abs(order_estimate(pts) - 3.0) <= 0.3);
}
