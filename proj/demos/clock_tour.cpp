// The N-state clock: deterministic cyclic steps on the ontological basis,
// equally spaced energies in the Fourier basis.

#include <cstdio>
#include <cstdlib>

#include "ontolab/clock.hpp"
#include "ontolab/oscillator.hpp"

int main(int argc, char** argv) {
  using namespace ontolab;
  const std::int64_t n = argc > 1 ? std::atoll(argv[1]) : 7;
  const double tau = 2.0 * kPi / static_cast<double>(n);  // omega = 1
  const clock::ClockModel model(n, tau);

  std::printf("clock with N = %lld, tau = %.6f\n", static_cast<long long>(n), tau);
  std::printf("state 0 after 1..N steps:");
  for (std::int64_t s = 1; s <= n; ++s) std::printf(" %lld", static_cast<long long>(clock::step_state(model, 0, s)));
  std::printf("\n\n%6s %20s %20s\n", "level", "numerical E", "2 pi (n+1/2)/(N tau)");
  const Spectrum s = clock::energy_spectrum(model);
  for (std::int64_t k = 0; k < n; ++k) {
    std::printf("%6lld %20.15f %20.15f\n", static_cast<long long>(k), s.eigenvalues(k), model.energy_level(k));
  }

  if (n % 2 == 1 && n >= 3) {
    const auto rep = oscillator::build_spin_rep((n - 1) / 2, tau);
    std::printf("\nas a spin-%lld oscillator:\n", static_cast<long long>((n - 1) / 2));
    std::printf("  |[x,p] - i(1 - tau H/pi)| = %.3e\n", oscillator::commutator_identity_residual(rep));
    std::printf("  |L^2 - l(l+1)|            = %.3e\n", oscillator::casimir_residual(rep));
    std::printf("  |H - H_osc - correction|  = %.3e\n", oscillator::hamiltonian_identity_residual(rep));
  }
  return 0;
}
