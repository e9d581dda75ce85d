#pragma once

// One-axis-twisted two-probe reduced state and its evolution under the two
// Lee-Yang dephasing channels.

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "lydeph/ising_bath.hpp"

namespace lydeph {

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

struct OatParameters {
  int n_probes = 3;
  double twist_angle = 0.0;  // theta, radians
  double eta = 0.01;         // probe-bath coupling

  void validate() const;
};

// Two-qubit X-state
//
//        | v+  0   0   u  |
//   rho = | 0   w   y   0  |
//        | 0   y   w   0  |
//        | u*  0   0   v- |
//
// in the basis (|00>, |01>, |10>, |11>) with |0> the excited and |1> the
// ground level, so v- is the |11> population of the untwisted state and
// u = <sigma_1- sigma_2-> = <00|rho|11>.
struct TwoQubitXState {
  double v_plus = 0.0;
  double v_minus = 1.0;
  double y = 0.0;
  double w = 0.0;
  std::complex<double> u{0.0, 0.0};

  double trace() const { return v_plus + v_minus + 2.0 * w; }
  Matrix4c to_matrix() const;
  // X-state positivity: v+ v- >= |u|^2, w >= |y|, nonnegative diagonal.
  bool is_physical(double tol = 1e-12) const;
};

struct KrausSet {
  std::vector<Eigen::MatrixXcd> operators;

  // max-norm distance of sum M^dagger M from the identity.
  double completeness_error() const;
  bool is_complete(double tol = 1e-12) const { return completeness_error() <= tol; }
};

TwoQubitXState oat_reduced_state(const OatParameters& params);

// Own-bath channel: u -> A^2 u, y -> A^2 y.
TwoQubitXState evolve_channel_I(const TwoQubitXState& state, const DephasingFactor& a);
// Shared-bath channel: u -> A' u, everything else fixed. Valid for X-states
// of the one-axis-twisted form only.
TwoQubitXState evolve_channel_II(const TwoQubitXState& state, const DephasingFactor& a_prime);
TwoQubitXState evolve(const TwoQubitXState& state, Channel channel, const DephasingFactor& factor);

// Single-qubit dephasing set {sqrt|A| Z^s, sqrt(1-|A|)|0><0|, sqrt(1-|A|)|1><1|}
// with Z^s = I for A >= 0 and sigma_z for A < 0.
KrausSet own_bath_kraus(double a);
// Two-qubit set for the shared bath; the sign of A' sits inside M2.
KrausSet shared_bath_kraus(double a_prime);
// Lift a single-qubit Kraus set to independent action on both qubits.
KrausSet on_each_qubit(const KrausSet& single);

// rho -> sum M rho M^dagger. Throws ValidationError for an incomplete set or
// operators that are not 4x4.
Matrix4c kraus_apply(const Matrix4c& rho, const KrausSet& kraus);

}  // namespace lydeph
