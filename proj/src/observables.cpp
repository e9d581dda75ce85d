#include "lydeph/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lydeph/error.hpp"

namespace lydeph {

namespace {

constexpr double kNegativeEigenvalueLimit = -1e-9;

ConcurrenceResult from_lambdas(std::array<double, 4> lambdas, int n_probes) {
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  ConcurrenceResult result;
  result.lambdas = lambdas;
  result.concurrence = std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
  result.rescaled = (n_probes - 1) * result.concurrence;
  return result;
}

// xi'^2 - xi^2 from the definitions, not from the min{} closed form.
double improvement_at(const TwoQubitXState& initial, double a, int n_probes) {
  DephasingFactor factor;
  factor.value = a;
  return spin_squeezing(initial, Channel::own_bath, factor, n_probes).improvement;
}

}  // namespace

double l1_coherence(const Matrix4c& rho) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) total += std::abs(rho(i, j));
  return total;
}

double coherence(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor) {
  const double a = factor.value.real();
  if (channel == Channel::own_bath) {
    return 2.0 * a * a * (std::abs(initial.u) + std::abs(initial.y));
  }
  return 2.0 * (std::abs(a) * std::abs(initial.u) + std::abs(initial.y));
}

ConcurrenceResult concurrence_generic(const Matrix4c& rho, int n_probes) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(rho);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed on rho");
  Eigen::Vector4d d = solver.eigenvalues();
  for (int i = 0; i < 4; ++i) {
    if (d[i] < kNegativeEigenvalueLimit) {
      throw NumericalError("density matrix has eigenvalue " + std::to_string(d[i]));
    }
  }
  // Eigenvalues at rounding level are exact zeros of a neighbouring matrix;
  // taking their square root would inject ~1e-8 noise.
  const double floor = 4.0 * std::numeric_limits<double>::epsilon() * d.cwiseAbs().maxCoeff();
  for (int i = 0; i < 4; ++i) d[i] = d[i] > floor ? std::sqrt(d[i]) : 0.0;
  const Matrix4c sqrt_rho = solver.eigenvectors() * d.asDiagonal() * solver.eigenvectors().adjoint();

  // sigma_y (x) sigma_y
  Matrix4c flip = Matrix4c::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Matrix4c sqrt_tilde = flip * sqrt_rho.conjugate() * flip;

  // Singular values of sqrt(rho) sqrt(rho~) are the square roots of the
  // eigenvalues of sqrt(rho) rho~ sqrt(rho), without a second square root.
  Eigen::JacobiSVD<Matrix4c> svd(sqrt_rho * sqrt_tilde);
  const Eigen::Vector4d s = svd.singularValues();
  return from_lambdas({s[0], s[1], s[2], s[3]}, n_probes);
}

ConcurrenceResult concurrence_channel_I(const TwoQubitXState& initial, const DephasingFactor& a, int n_probes) {
  const double a2 = a.value.real() * a.value.real();
  const double root = std::sqrt(initial.v_plus * initial.v_minus);
  const double u = a2 * std::abs(initial.u);
  const double y = a2 * std::abs(initial.y);
  return from_lambdas({root + u, root - u, initial.w + y, initial.w - y}, n_probes);
}

ConcurrenceResult concurrence_channel_II(const TwoQubitXState& initial, const DephasingFactor& a_prime,
                                         int n_probes) {
  const double root = std::sqrt(initial.v_plus * initial.v_minus);
  const double u = std::abs(a_prime.value.real()) * std::abs(initial.u);
  const double y = std::abs(initial.y);
  return from_lambdas({root + u, root - u, initial.w + y, initial.w - y}, n_probes);
}

ConcurrenceResult concurrence(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor,
                              int n_probes) {
  return channel == Channel::own_bath ? concurrence_channel_I(initial, factor, n_probes)
                                      : concurrence_channel_II(initial, factor, n_probes);
}

double initial_rescaled_concurrence(const TwoQubitXState& initial, int n_probes) {
  return 2.0 * (n_probes - 1) * std::max(0.0, std::abs(initial.u) - initial.y);
}

double squeezing_improvement(const TwoQubitXState& initial, double a_squared, int n_probes) {
  return 2.0 * (n_probes - 1) *
         std::min(a_squared * (std::abs(initial.u) - initial.y), (1.0 - a_squared) * initial.y);
}

SqueezingReport spin_squeezing(const TwoQubitXState& initial, Channel channel, const DephasingFactor& factor,
                               int n_probes) {
  const double a = factor.value.real();
  const double u = std::abs(initial.u);
  // <s1+ s2-> and |<s1- s2->| after the channel.
  double plus = initial.y;
  double minus = std::abs(a) * u;
  if (channel == Channel::own_bath) {
    plus = a * a * initial.y;
    minus = a * a * u;
  }
  SqueezingReport report;
  report.xi2 = 1.0 + 2.0 * (n_probes - 1) * (plus - minus);
  report.xi2_prime = 1.0 - concurrence(initial, channel, factor, n_probes).rescaled;
  report.improvement = report.xi2_prime - report.xi2;
  if (channel == Channel::own_bath && u > initial.y) {
    report.improvement_max = 2.0 * (n_probes - 1) * (1.0 - initial.y / u) * initial.y;
  }
  return report;
}

namespace {

void check_grid(int samples, double a_min, double a_max) {
  if (samples < 2) throw ValidationError("grid search needs at least 2 samples");
  if (!(a_min < a_max) || a_min < -1.0 || a_max > 1.0) throw ValidationError("grid range must lie in [-1, 1]");
}

double grid_point(int i, int samples, double a_min, double a_max) {
  return a_min + (a_max - a_min) * (static_cast<double>(i) / (samples - 1));
}

}  // namespace

GridMaximum max_improvement_on_grid(const TwoQubitXState& initial, int n_probes, int samples, double a_min,
                                    double a_max) {
  check_grid(samples, a_min, a_max);
  GridMaximum best{-std::numeric_limits<double>::infinity(), 0.0};
#pragma omp parallel
  {
    GridMaximum local{-std::numeric_limits<double>::infinity(), 0.0};
#pragma omp for schedule(static) nowait
    for (int i = 0; i < samples; ++i) {
      const double a = grid_point(i, samples, a_min, a_max);
      const double value = improvement_at(initial, a, n_probes);
      if (value > local.value) local = {value, a};
    }
#pragma omp critical(lydeph_grid_max)
    {
      if (local.value > best.value || (local.value == best.value && local.a < best.a)) best = local;
    }
  }
  return best;
}

GridMaximum max_improvement_on_grid_serial(const TwoQubitXState& initial, int n_probes, int samples,
                                           double a_min, double a_max) {
  check_grid(samples, a_min, a_max);
  GridMaximum best{-std::numeric_limits<double>::infinity(), 0.0};
  for (int i = 0; i < samples; ++i) {
    const double a = grid_point(i, samples, a_min, a_max);
    const double value = improvement_at(initial, a, n_probes);
    if (value > best.value) best = {value, a};
  }
  return best;
}

}  // namespace lydeph
