#pragma once

// Coherence, Wootters concurrence and spin squeezing of the two-probe state.

#include <array>

#include "lydeph/channels.hpp"

namespace lydeph {

struct ConcurrenceResult {
  double concurrence = 0.0;
  double rescaled = 0.0;              // (N - 1) C
  std::array<double, 4> lambdas{};    // sqrt of the eigenvalues of R, descending
};

struct SqueezingReport {
  double xi2 = 1.0;
  double xi2_prime = 1.0;        // 1 - C_r
  double improvement = 0.0;      // xi2_prime - xi2
  double improvement_max = 0.0;  // best improvement reachable from this initial state
};

// Sum of |off-diagonal| entries.
double l1_coherence(const Matrix4c& rho);

// Coherence of the evolved state from the initial OAT magnitudes:
// 2 A^2 (|u| + y) for own baths, 2 (|A' u| + y) for a shared bath.
double coherence(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor);

// Wootters concurrence of an arbitrary two-qubit density matrix. The lambdas
// are the singular values of sqrt(rho) sqrt(rho~), i.e. the square roots of
// the eigenvalues of the Hermitian sqrt(rho) rho~ sqrt(rho). Throws
// NumericalError if rho has an eigenvalue below -1e-9.
ConcurrenceResult concurrence_generic(const Matrix4c& rho, int n_probes = 2);

// X-state closed forms for the evolved state, given the initial state.
ConcurrenceResult concurrence_channel_I(const TwoQubitXState& initial, const DephasingFactor& a, int n_probes);
ConcurrenceResult concurrence_channel_II(const TwoQubitXState& initial, const DephasingFactor& a_prime,
                                         int n_probes);
ConcurrenceResult concurrence(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor,
                              int n_probes);

// 2 (N - 1) max{0, |u| - y}.
double initial_rescaled_concurrence(const TwoQubitXState& initial, int n_probes);

SqueezingReport spin_squeezing(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor,
                               int n_probes);

// Own-bath improvement 2 (N - 1) min{A^2 (|u| - y), (1 - A^2) y}.
double squeezing_improvement(const TwoQubitXState& initial, double a_squared, int n_probes);

struct GridMaximum {
  double value = 0.0;
  double a = 0.0;
};

// Largest own-bath improvement xi'^2 - xi^2 over `samples` uniform points
// A in [a_min, a_max]. OpenMP kernel and serial reference.
GridMaximum max_improvement_on_grid(const TwoQubitXState& initial, int n_probes, int samples, double a_min = 0.0,
                                    double a_max = 1.0);
GridMaximum max_improvement_on_grid_serial(const TwoQubitXState& initial, int n_probes, int samples,
                                           double a_min = 0.0, double a_max = 1.0);

}  // namespace lydeph
