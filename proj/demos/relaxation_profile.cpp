// profile a noisy qubit channel: modulus, fixed point, spectral gap, and the
// entropy climb of a register orbit
#include <cstdio>

#include "qchan/qchan.hpp"

int main() {
  using namespace qchan;

  Channel noise = two_pauli(0.6);
  std::printf("two-Pauli channel, p = 0.6\n");
  std::printf("  contractivity modulus k = %.6f\n", modulus_qubit(noise));
  std::printf("  spectral gap gamma      = %.6f\n", spectral_gap(noise));

  FixedPointReport fp = fixed_point(noise);
  std::printf("  fixed point unique      = %s (residual %.2e)\n",
              fp.unique ? "yes" : "no", fp.residual);

  Rng rng(7);
  OrbitRecord orbit = simulate_register(pure_density(rng.pure_state(2)), noise, 20);
  std::printf("\n  step   distance-to-fixed-point   entropy\n");
  for (std::size_t t = 0; t < orbit.states.size(); t += 4)
    std::printf("  %4zu   %.8f                %.6f\n", t, orbit.distances_to_fixed_point[t],
                von_neumann_entropy(orbit.states[t]));
  return 0;
}
