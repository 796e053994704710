// entropy-energy budget of a noisy computation: how many steps before the
// entropy gain overwhelms the energy cost
#include <cstdio>

#include "qchan/qchan.hpp"

int main() {
  using namespace qchan;

  EntropyEnergyParams p;
  p.beta = 1.0;
  p.e_max = 0.002;
  p.epsilon = 0.1;
  p.n_qubits = 30;
  p.k = 0.9;
  p.delta = 0.01;

  std::printf("beta E_max = %.4f, eps = %.2f, N = %d, k = %.2f\n", p.beta * p.e_max, p.epsilon,
              p.n_qubits, p.k);
  std::printf("  n_max (entropy argument)   = %ld\n", n_max_entropy(p));
  std::printf("  n_max (weak noise, delta=%.2f) = %.1f\n", p.delta, n_max_weak_noise(p));

  // the same machine seen through the worked NMR numbers
  NmrCaseStudy nmr = nmr_case_study(1e23, 0.045, 2.8);
  std::printf("\nNMR: eps ~ %.2e, k = %.6f, n_max = %.0f\n", nmr.epsilon_order, nmr.k, nmr.n_max);
  return 0;
}
