#include "lydeph/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lydeph/error.hpp"

namespace lydeph {

namespace {

// Factors must be real (h = 0) and must not amplify coherences.
double real_factor(const DephasingFactor& factor, const char* name) {
  const double magnitude = std::abs(factor.value);
  if (std::abs(factor.value.imag()) > 1e-9 * (1.0 + magnitude)) {
    throw ValidationError(std::string(name) + " must be real; channels assume zero bath field");
  }
  const double a = factor.value.real();
  if (std::abs(a) > 1.0 + 1e-9) {
    throw ValidationError(std::string(name) + " = " + std::to_string(a) + " would amplify coherence");
  }
  return a;
}

double clamp_magnitude(double a) {
  if (std::abs(a) > 1.0 + 1e-9) {
    throw ValidationError("dephasing factor " + std::to_string(a) + " outside [-1, 1]");
  }
  return std::min(std::abs(a), 1.0);
}

}  // namespace

void OatParameters::validate() const {
  if (n_probes < 2) {
    throw ValidationError("need at least 2 probes, got " + std::to_string(n_probes));
  }
  if (!std::isfinite(twist_angle)) throw ValidationError("twist angle must be finite");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("eta must be positive");
}

Matrix4c TwoQubitXState::to_matrix() const {
  Matrix4c rho = Matrix4c::Zero();
  rho(0, 0) = v_plus;
  rho(1, 1) = w;
  rho(2, 2) = w;
  rho(3, 3) = v_minus;
  rho(1, 2) = y;
  rho(2, 1) = y;
  rho(0, 3) = u;
  rho(3, 0) = std::conj(u);
  return rho;
}

bool TwoQubitXState::is_physical(double tol) const {
  return v_plus >= -tol && v_minus >= -tol && w >= -tol && v_plus * v_minus >= std::norm(u) - tol &&
         w >= std::abs(y) - tol && std::abs(trace() - 1.0) <= tol;
}

double KrausSet::completeness_error() const {
  if (operators.empty()) return 1.0;
  const auto dim = operators.front().cols();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& m : operators) {
    if (m.rows() != dim || m.cols() != dim) return 1.0;
    total += m.adjoint() * m;
  }
  return (total - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

TwoQubitXState oat_reduced_state(const OatParameters& params) {
  params.validate();
  const int n = params.n_probes;
  const double theta = params.twist_angle;
  const double cos_pow = std::pow(std::cos(theta), n - 2);
  const double sz = -std::pow(std::cos(0.5 * theta), n - 1);
  const double zz = 0.5 * (1.0 + cos_pow);

  TwoQubitXState state;
  state.v_plus = 0.25 * (1.0 + 2.0 * sz + zz);
  state.v_minus = 0.25 * (1.0 - 2.0 * sz + zz);
  state.y = 0.125 * (1.0 - cos_pow);
  state.w = state.y;
  state.u = {-0.125 * (1.0 - cos_pow), -0.5 * std::sin(0.5 * theta) * std::pow(std::cos(0.5 * theta), n - 2)};
  return state;
}

TwoQubitXState evolve_channel_I(const TwoQubitXState& state, const DephasingFactor& a) {
  const double factor = real_factor(a, "own-bath factor A");
  const double a2 = factor * factor;
  TwoQubitXState out = state;
  out.u *= a2;
  out.y *= a2;
  return out;
}

TwoQubitXState evolve_channel_II(const TwoQubitXState& state, const DephasingFactor& a_prime) {
  const double factor = real_factor(a_prime, "shared-bath factor A'");
  TwoQubitXState out = state;
  out.u *= factor;
  return out;
}

TwoQubitXState evolve(const TwoQubitXState& state, Channel channel, const DephasingFactor& factor) {
  return channel == Channel::own_bath ? evolve_channel_I(state, factor) : evolve_channel_II(state, factor);
}

KrausSet own_bath_kraus(double a) {
  const double s = clamp_magnitude(a);
  Matrix2c m0 = Matrix2c::Identity() * std::sqrt(s);
  if (a < 0.0) m0(1, 1) = -m0(1, 1);
  Matrix2c m1 = Matrix2c::Zero();
  m1(0, 0) = std::sqrt(1.0 - s);
  Matrix2c m2 = Matrix2c::Zero();
  m2(1, 1) = std::sqrt(1.0 - s);
  return KrausSet{{m0, m1, m2}};
}

KrausSet shared_bath_kraus(double a_prime) {
  const double s = clamp_magnitude(a_prime);
  Matrix4c m0 = Matrix4c::Zero();
  m0(0, 0) = std::sqrt(1.0 - s);
  Matrix4c m1 = Matrix4c::Zero();
  m1(3, 3) = std::sqrt(1.0 - s);
  Matrix4c m2 = Matrix4c::Zero();
  m2(0, 0) = std::sqrt(s);
  m2(3, 3) = a_prime < 0.0 ? -std::sqrt(s) : std::sqrt(s);
  Matrix4c m3 = Matrix4c::Zero();
  m3(1, 1) = 1.0;
  m3(2, 2) = 1.0;
  return KrausSet{{m0, m1, m2, m3}};
}

KrausSet on_each_qubit(const KrausSet& single) {
  KrausSet lifted;
  for (const auto& a : single.operators) {
    for (const auto& b : single.operators) {
      if (a.rows() != 2 || b.rows() != 2) {
        throw ValidationError("on_each_qubit expects 2x2 Kraus operators");
      }
      Eigen::MatrixXcd m(4, 4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
      lifted.operators.push_back(std::move(m));
    }
  }
  return lifted;
}

Matrix4c kraus_apply(const Matrix4c& rho, const KrausSet& kraus) {
  for (const auto& m : kraus.operators) {
    if (m.rows() != 4 || m.cols() != 4) throw ValidationError("kraus_apply expects 4x4 operators");
  }
  const double err = kraus.completeness_error();
  if (err > 1e-12) {
    throw ValidationError("Kraus set is not complete (error " + std::to_string(err) + ")");
  }
  Matrix4c out = Matrix4c::Zero();
  for (const auto& m : kraus.operators) {
    out += m * rho * m.adjoint();
  }
  return out;
}

}  // namespace lydeph
