#include "lydeph/verification/oracles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lydeph/error.hpp"

namespace lydeph::verification {

namespace {

using State = std::vector<std::complex<double>>;

// Unnormalised Walsh-Hadamard transform; applying it twice multiplies by 2^N.
void hadamard_all(State& psi) {
  for (std::size_t half = 1; half < psi.size(); half <<= 1) {
    for (std::size_t i = 0; i < psi.size(); i += 2 * half) {
      for (std::size_t j = i; j < i + half; ++j) {
        const auto a = psi[j];
        const auto b = psi[j + half];
        psi[j] = a + b;
        psi[j + half] = a - b;
      }
    }
  }
}

// Qubit 0 is the most significant bit; bit value 0 is the excited state,
// sigma_z = +1.
State twisted_state(int n, double theta) {
  if (n < 2 || n > 20) throw ValidationError("exact OAT oracle supports 2..20 probes");
  const std::size_t dim = std::size_t{1} << n;
  State psi(dim, 0.0);
  psi[dim - 1] = 1.0;
  // Jx = H Jz H qubit-wise, so the twist is diagonal between two transforms.
  hadamard_all(psi);
  for (std::size_t b = 0; b < dim; ++b) {
    const double jz = 0.5 * (n - 2.0 * std::popcount(b));
    psi[b] *= std::polar(1.0, -0.5 * theta * jz * jz);
  }
  hadamard_all(psi);
  const double norm = 1.0 / static_cast<double>(dim);
  for (auto& v : psi) v *= norm;
  return psi;
}

// Total spin component along axis (0 = x, 1 = y, 2 = z) applied to psi.
State apply_spin(const State& psi, int n, int axis) {
  State out(psi.size(), 0.0);
  const std::complex<double> i_unit(0.0, 1.0);
  for (int q = 0; q < n; ++q) {
    const std::size_t mask = std::size_t{1} << (n - 1 - q);
    for (std::size_t b = 0; b < psi.size(); ++b) {
      const bool one = (b & mask) != 0;
      switch (axis) {
        case 0:
          out[b ^ mask] += 0.5 * psi[b];
          break;
        case 1:
          // sigma_y |0> = i |1>, sigma_y |1> = -i |0>
          out[b ^ mask] += (one ? -0.5 : 0.5) * i_unit * psi[b];
          break;
        default:
          out[b] += (one ? -0.5 : 0.5) * psi[b];
      }
    }
  }
  return out;
}

std::complex<double> inner(const State& a, const State& b) {
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a[i]) * b[i];
  return total;
}

}  // namespace

Matrix4c exact_oat_reduced_state(int n_probes, double theta) {
  const State psi = twisted_state(n_probes, theta);
  const std::size_t rest = psi.size() / 4;
  Matrix4c rho = Matrix4c::Zero();
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      std::complex<double> total = 0.0;
      for (std::size_t r = 0; r < rest; ++r) total += psi[a * rest + r] * std::conj(psi[b * rest + r]);
      rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = total;
    }
  return rho;
}

double exact_oat_squeezing(int n_probes, double theta) {
  const State psi = twisted_state(n_probes, theta);
  std::array<State, 3> spins;
  Eigen::Vector3d mean;
  for (int k = 0; k < 3; ++k) {
    spins[k] = apply_spin(psi, n_probes, k);
    mean[k] = inner(psi, spins[k]).real();
  }
  Eigen::Matrix3d second;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) second(a, b) = inner(spins[a], spins[b]).real();

  Eigen::Vector3d axis = mean.norm() > 1e-12 ? Eigen::Vector3d(mean.normalized()) : Eigen::Vector3d::UnitZ();
  Eigen::Vector3d e1 = axis.unitOrthogonal();
  Eigen::Vector3d e2 = axis.cross(e1);
  Eigen::Matrix<double, 3, 2> basis;
  basis << e1, e2;
  const Eigen::Matrix2d cov = basis.transpose() * (second - mean * mean.transpose()) * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
  return 4.0 * solver.eigenvalues().minCoeff() / n_probes;
}

std::vector<double> exact_ring_zero_phases(int n_spins, double coupling_product) {
  const double radius = std::sqrt(-std::expm1(-4.0 * coupling_product));
  std::vector<double> phases;
  for (int k = 1; k <= n_spins; ++k) {
    const double c = radius * std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n_spins));
    phases.push_back(2.0 * std::numbers::pi - 2.0 * std::acos(c));
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

}  // namespace lydeph::verification
