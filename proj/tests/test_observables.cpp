#include <catch2/catch_amalgamated.hpp>

#include "lowreg/initial_data.hpp"
#include "lowreg/observables.hpp"
#include "oracles.hpp"

using namespace lowreg;

namespace {

double quadrature_mass(const Field& f) {
  const auto vals = oracle::direct_inverse(f);
  double s = 0.0;
  for (const auto& v : vals) s += std::norm(v);
  return f.grid().volume() / static_cast<double>(f.size()) * s;
}

} // namespace

TEST_CASE("mass", "[observables]") {
  const auto g = make_grid_1d(64);
  CHECK(mass(Field(g)) == 0.0);
  CHECK(mass(plane_wave(g, 1.0, 1)) == Catch::Approx(2 * M_PI).epsilon(1e-15));
  for (unsigned seed = 0; seed < 5; ++seed) {
    const Field f = oracle::random_field(g, seed);
    const double m = mass(f);
    CHECK(std::abs(m - quadrature_mass(f)) <= 1e-12 * m);
    const double c = sobolev_norm(f, 0.0);
    CHECK(std::abs(m - g->volume() * c * c) <= 1e-14 * m);
  }
  const auto g2 = make_grid(2, {16, 8}, {2.0, 3.0});
  const Field f2 = oracle::random_field(g2, 11);
  CHECK(std::abs(mass(f2) - quadrature_mass(f2)) <= 1e-12 * mass(f2));
}

TEST_CASE("energy", "[observables]") {
  const auto g = make_grid_1d(32);
  CHECK(energy(Field(g), 1.0) == 0.0);
  CHECK(energy(plane_wave(g, 1.0, 1), 1.0) == Catch::Approx(3 * M_PI).epsilon(1e-14));
  CHECK(energy(plane_wave(g, 1.0, 1), -1.0) == Catch::Approx(M_PI).epsilon(1e-14));

  const Field f = random_h_alpha(g, {1.0, 9, 0});
  CHECK(energy(f, 0.0) == spectral_gradient_norm_sq(f));

  // linear in mu with a non-negative quartic coefficient
  const double q = quartic_integral(f);
  CHECK(q >= 0.0);
  for (double mu : {-2.0, -0.5, 0.3, 4.0})
    CHECK(std::abs(energy(f, mu) - (energy(f, 0.0) + 0.5 * mu * q)) <= 1e-12 * (1.0 + std::abs(energy(f, mu))));

  // quartic quadrature against a direct sum
  const auto vals = oracle::direct_inverse(f);
  double s = 0.0;
  for (const auto& v : vals) s += std::norm(v) * std::norm(v);
  CHECK(q == Catch::Approx(g->volume() / 32.0 * s).epsilon(1e-12));
}

TEST_CASE("error norms", "[observables]") {
  const auto g = make_grid_1d(32);
  const Field ref = oracle::random_field(g, 2);
  CHECK(error_norm(ref, ref, ErrorNorm::l2()) == 0.0);
  const double eps = 1e-3;
  Field f = ref;
  f.mode(1) += eps;
  CHECK(error_norm(f, ref, ErrorNorm::l2()) == Catch::Approx(eps).epsilon(1e-9));
  Field h = ref;
  h.mode(2) += eps;
  CHECK(error_norm(h, ref, ErrorNorm::h1()) == Catch::Approx(eps * std::sqrt(5.0)).epsilon(1e-9));
  CHECK(error_norm(h, ref, ErrorNorm::h(2.0)) == Catch::Approx(eps * 5.0).epsilon(1e-9));

  SECTION("metric properties") {
    for (unsigned s = 0; s < 10; ++s) {
      const Field a = oracle::random_field(g, 100 + s), b = oracle::random_field(g, 200 + s),
                  c = oracle::random_field(g, 300 + s);
      for (auto n : {ErrorNorm::l2(), ErrorNorm::h1(), ErrorNorm::h(0.5)}) {
        CHECK(std::abs(error_norm(a, b, n) - error_norm(b, a, n)) <= 1e-12);
        CHECK(error_norm(a, c, n) <= error_norm(a, b, n) + error_norm(b, c, n) + 1e-12);
        CHECK(error_norm(a, b, n) > 0.0);
      }
    }
  }
  SECTION("grid mismatch") {
    CHECK_THROWS_AS(error_norm(ref, Field(make_grid_1d(16)), ErrorNorm::l2()), ConfigError);
  }
}

TEST_CASE("relative deviation", "[observables]") {
  const auto flat = relative_deviation({3.0, 3.0, 3.0}, 3.0);
  for (double d : flat) CHECK(d == 0.0);
  const auto d = relative_deviation({2.0, 2.1}, 2.0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == Catch::Approx(0.05).epsilon(1e-12));
  const auto neg = relative_deviation({-4.0, -3.0, -5.0}, -4.0);
  CHECK(neg[1] == Catch::Approx(0.25));
  CHECK(neg[2] == Catch::Approx(0.25));
  CHECK_THROWS_AS(relative_deviation({1.0}, 0.0), ConfigError);
}

TEST_CASE("sampling", "[observables]") {
  const auto g = make_grid_1d(32);
  const Field f = random_h_alpha(g, {2.0, 1, 0});
  const auto s = sample_observables(f, 0.5, -1.0);
  CHECK(s.t == 0.5);
  CHECK(s.mass == mass(f));
  CHECK(s.energy == energy(f, -1.0));
  Field bad = f;
  bad[1] = Complex{NAN, 0.0};
  CHECK_THROWS_AS(mass(bad), NumericalError);
}
