#pragma once

#include <cstdint>

namespace cli {

/// Re-derives the closed-form symbols from the frequency ODE with a fixed-step
/// RK4 + Richardson integrator and spot-checks the structural invariants
/// (partition of unity, quadrature row sums, Wronskian). Returns 0 on success,
/// 1 on any failure; prints one line per check.
int run_selftest(std::uint64_t seed);

}  // namespace cli
