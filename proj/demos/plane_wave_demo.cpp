// Evolves a plane wave with each scheme and prints the error against the
// exact solution a e^{i(kx - (k^2 + mu a^2) t)} for a few step sizes.
#include <cstdio>

#include "lowreg/lowreg.hpp"

int main() {
  using namespace lowreg;
  const auto grid = make_grid_1d(32);
  const double mu = 1.0, T = 1.0;
  const Field u0 = plane_wave(grid, 1.0, 1);
  const Field exact = plane_wave_exact(grid, 1.0, 1, mu, T);

  std::printf("%-8s %10s %12s\n", "scheme", "tau", "err_l2");
  for (const char* name : {"lri1", "lri2", "slri1", "slri2"}) {
    const auto scheme = make_scheme(name, mu);
    for (int e = 4; e <= 8; e += 2) {
      const double tau = std::ldexp(1.0, -e);
      EvolveOptions opt;
      opt.stride = 0;
      const auto res = run_scheme(scheme, u0, tau, steps_for(T, tau), opt);
      std::printf("%-8s %10.6f %12.4e\n", name, tau, error_norm(res.final, exact, ErrorNorm::l2()));
    }
  }
}
