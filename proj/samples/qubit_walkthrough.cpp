// Walks a qubit around its clock: H = diag(1, -1), |ψ⟩ = |0⟩ + |1⟩.

#include <cstdio>
#include <numbers>

#include "simul/action_angle.hpp"

int main() {
  using namespace simul;
  const auto s = spectral_decompose(HermitianOperator::diagonal({1.0, -1.0}));
  const PureState p0{1.0, 1.0};
  const int ref = 0, j = 1;
  std::printf("period %.12f\n", time_function_period(s, j, ref));
  for (int k = 0; k <= 8; ++k) {
    const double tau = k * std::numbers::pi / 8;
    const PureState p = evolve(s, p0, tau);
    const auto t = time_function(p, s, j, ref);
    const auto c = chart(p, s, ref);
    std::printf("tau=%.4f  T=(%+.6f, %+.6f)  action=%.6f\n", tau, t.value.real(), t.value.imag(),
                c.actions[0]);
  }
}
