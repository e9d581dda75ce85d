#pragma once

// Independent reference computations used by the tests and the acceptance
// suite. They share no numerical code with the closed forms they check.

#include <vector>

#include "lydeph/channels.hpp"

namespace lydeph::verification {

// Two-qubit reduced state of exp(-i theta Jx^2 / 2) |1...1>, built from the
// full 2^N state vector and a partial trace. n_probes <= 20.
Matrix4c exact_oat_reduced_state(int n_probes, double theta);

// Kitagawa-Ueda squeezing 4 min Var(J_perp) / N, minimised over directions
// perpendicular to the mean spin of the exact 2^N state.
double exact_oat_squeezing(int n_probes, double theta);

// Lee-Yang phases of the periodic ring from the transfer-matrix eigenvalues:
// cos(psi_k) = sqrt(1 - exp(-4K)) cos((2k - 1) pi / (2N)), phi_k = 2pi - 2 psi_k.
std::vector<double> exact_ring_zero_phases(int n_spins, double coupling_product);

}  // namespace lydeph::verification
