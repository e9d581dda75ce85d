#include "lydeph/ising_bath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lydeph/error.hpp"

namespace lydeph {

namespace {

constexpr double pi = std::numbers::pi;

using Quad = boost::multiprecision::cpp_bin_float_quad;

struct QuadComplex {
  Quad re;
  Quad im;
};

QuadComplex operator*(const QuadComplex& a, const QuadComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QuadComplex operator/(const QuadComplex& a, const QuadComplex& b) {
  const Quad den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

// Newton iteration on P in quad precision starting from a double guess.
std::complex<double> polish_root(const std::vector<double>& coeffs, std::complex<double> guess) {
  QuadComplex z{guess.real(), guess.imag()};
  const Quad tiny = Quad(1e-33);
  for (int iter = 0; iter < 60; ++iter) {
    QuadComplex p{Quad(coeffs.back()), Quad(0)};
    QuadComplex dp{Quad(0), Quad(0)};
    for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
      dp = dp * z;
      dp.re += p.re;
      dp.im += p.im;
      p = p * z;
      p.re += coeffs[k];
    }
    if (dp.re == 0 && dp.im == 0) break;
    const QuadComplex step = p / dp;
    z.re -= step.re;
    z.im -= step.im;
    const Quad size = abs(step.re) + abs(step.im);
    if (size <= tiny * (abs(z.re) + abs(z.im))) break;
  }
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

double wrap_phase(double phi) {
  double r = std::fmod(phi, 2.0 * pi);
  if (r < 0) r += 2.0 * pi;
  return r;
}

void sample_reduced_partition(const PartitionPolynomial& poly, double upper, int samples,
                              std::vector<double>& grid, std::vector<double>& values) {
  grid.resize(samples + 1);
  values.resize(samples + 1);
  const double step = upper / samples;
#pragma omp parallel for schedule(static)
  for (int j = 0; j <= samples; ++j) {
    grid[j] = j == samples ? upper : step * j;
    values[j] = reduced_partition_transfer(poly, grid[j]);
  }
}

double bisect_root(const PartitionPolynomial& poly, double lo, double hi, double f_lo) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = reduced_partition_transfer(poly, mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(Channel channel) {
  return channel == Channel::own_bath ? "I" : "II";
}

void IsingRing::validate() const {
  if (n_spins < 3) {
    throw ValidationError("ring needs at least 3 spins, got " + std::to_string(n_spins));
  }
  if (!(coupling > 0.0) || !std::isfinite(coupling)) {
    throw ValidationError("coupling must be positive and finite (ferromagnetic ring)");
  }
  if (!(inverse_temperature >= 0.0) || !std::isfinite(inverse_temperature)) {
    throw ValidationError("inverse temperature must be finite and >= 0");
  }
  if (!std::isfinite(field)) {
    throw ValidationError("field must be finite");
  }
}

double PartitionPolynomial::sum() const {
  double total = 0.0;
  for (double c : coefficients) total += c;
  return total;
}

PartitionPolynomial partition_coefficients(const IsingRing& ring) {
  ring.validate();
  const int n = ring.n_spins;
  const double k = ring.inverse_temperature * ring.coupling;
  // Each block of down spins costs two domain walls, i.e. a factor e^{-4K}.
  const double q = std::exp(-4.0 * k);

  PartitionPolynomial poly;
  poly.coefficients.assign(n + 1, 0.0);
  poly.coefficients[0] = poly.coefficients[n] = 1.0;
  poly.scale_log = k * n;
  poly.inverse_temperature = ring.inverse_temperature;

  for (int down = 1; down <= n / 2; ++down) {
    const int up = n - down;
    // m = 1: n placements of a single block.
    double term = static_cast<double>(n) * q;
    double total = term;
    // t_{m+1} / t_m = (down - m)(up - m) / (m (m + 1)) * q
    for (int m = 1; m < std::min(down, up); ++m) {
      term *= static_cast<double>(down - m) * static_cast<double>(up - m) /
              (static_cast<double>(m) * static_cast<double>(m + 1)) * q;
      if (term == 0.0) break;
      total += term;
    }
    if (!std::isfinite(total)) {
      throw NumericalError("partition coefficient overflow at n = " + std::to_string(down));
    }
    poly.coefficients[down] = total;
    poly.coefficients[up] = total;
  }
  return poly;
}

PartitionPolynomial partition_coefficients_bruteforce(const IsingRing& ring) {
  ring.validate();
  const int n = ring.n_spins;
  if (n > 24) {
    throw ValidationError("brute-force enumeration limited to 24 spins, got " + std::to_string(n));
  }
  const double k = ring.inverse_temperature * ring.coupling;

  // counts[down][walls]; exact integer tallies over all 2^n configurations.
  std::vector<std::vector<std::uint64_t>> counts(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  const std::uint32_t mask = (1u << n) - 1u;
  for (std::uint64_t state = 0; state <= mask; ++state) {
    const auto cfg = static_cast<std::uint32_t>(state);
    const std::uint32_t rotated = ((cfg >> 1) | (cfg << (n - 1))) & mask;
    ++counts[std::popcount(cfg)][std::popcount(cfg ^ rotated)];
  }

  PartitionPolynomial poly;
  poly.coefficients.assign(n + 1, 0.0);
  poly.scale_log = k * n;
  poly.inverse_temperature = ring.inverse_temperature;
  for (int down = 0; down <= n; ++down) {
    double total = 0.0;
    for (int walls = 0; walls <= n; ++walls) {
      if (counts[down][walls] == 0) continue;
      // sum_i s_i s_{i+1} = n - 2 walls
      total += static_cast<double>(counts[down][walls]) * std::exp(-2.0 * k * walls);
    }
    poly.coefficients[down] = total;
  }
  return poly;
}

double reduced_partition_sum(const PartitionPolynomial& poly, double phi) {
  const int n = poly.degree();
  double total = 0.0;
  for (int j = 0; j <= n; ++j) {
    total += poly.coefficients[j] * std::cos((j - 0.5 * n) * phi);
  }
  return total;
}

double reduced_partition_transfer(const PartitionPolynomial& poly, double phi) {
  const int n = poly.degree();
  const double k = poly.coupling_product();
  const double c = std::cos(0.5 * phi);
  const double s = std::sin(0.5 * phi);
  const double gap = std::exp(-4.0 * k);
  const double disc = gap - s * s;
  if (disc >= 0.0) {
    const double r = std::sqrt(disc);
    return std::pow(c + r, n) + std::pow(c - r, n);
  }
  // Complex-conjugate eigenvalues rho e^{+-i alpha} with rho^2 = 1 - e^{-4K}.
  const double rho = std::sqrt(-std::expm1(-4.0 * k));
  const double alpha = std::atan2(std::sqrt(-disc), c);
  return 2.0 * std::pow(rho, n) * std::cos(n * alpha);
}

LeeYangZeroSet lee_yang_zeros(const PartitionPolynomial& poly, const ZeroSearchOptions& options) {
  const int n = poly.degree();
  if (n < 1) throw ValidationError("partition polynomial has no zeros");
  for (int j = 0; j <= n; ++j) {
    if (!(poly.coefficients[j] >= 0.0) || poly.coefficients[j] != poly.coefficients[n - j]) {
      throw ValidationError("partition polynomial must be palindromic with nonnegative coefficients");
    }
  }

  LeeYangZeroSet result;
  result.inverse_temperature = poly.inverse_temperature;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.companion_modulus_deviation = nan;
  result.companion_phase_deviation = nan;

  if (poly.scale_log == 0.0) {
    // (1 + z)^N: every zero sits at z = -1.
    result.phases.assign(n, pi);
    result.residual_bound = 0.0;
    return result;
  }

  // Bracketing runs on the transfer-matrix form, so the coefficients must be
  // those of a ring with beta*lambda = scale_log / N.
  const double norm = poly.sum();
  if (!(std::abs(reduced_partition_transfer(poly, 0.0) - norm) <= 1e-10 * norm)) {
    throw ValidationError("coefficients are not those of a periodic ring with beta*lambda = scale_log / N");
  }

  const bool odd = (n % 2) != 0;
  const int needed = n / 2;
  std::vector<double> roots;
  std::vector<double> grid;
  std::vector<double> values;
  int samples = options.initial_samples_per_spin * n;
  while (true) {
    // For odd N, pi is a root of Q; bracket on (0, pi) only.
    const double upper = odd ? pi * (1.0 - 1.0 / (4.0 * samples)) : pi;
    sample_reduced_partition(poly, upper, samples, grid, values);
    roots.clear();
    for (int j = 0; j < samples; ++j) {
      if (values[j] == 0.0 && j > 0) {
        roots.push_back(grid[j]);
      } else if ((values[j] < 0.0 && values[j + 1] > 0.0) || (values[j] > 0.0 && values[j + 1] < 0.0)) {
        roots.push_back(bisect_root(poly, grid[j], grid[j + 1], values[j]));
      }
    }
    if (static_cast<int>(roots.size()) == needed) break;
    if (samples * 2 > options.max_samples_per_spin * n) {
      throw NumericalError("bracketing found " + std::to_string(roots.size()) + " of " +
                           std::to_string(needed) + " Lee-Yang zeros on (0, pi)");
    }
    samples *= 2;
  }

  result.phases.reserve(n);
  for (double phi : roots) {
    result.phases.push_back(phi);
    result.phases.push_back(2.0 * pi - phi);
  }
  if (odd) result.phases.push_back(pi);
  std::sort(result.phases.begin(), result.phases.end());

  double residual = 0.0;
  for (double phi : result.phases) {
    residual = std::max(residual, std::abs(reduced_partition_sum(poly, phi)) / norm);
  }
  result.residual_bound = residual;
  if (residual > 1e-9) {
    throw NumericalError("Lee-Yang phases leave residual " + std::to_string(residual) + " in the polynomial");
  }

  if (n <= options.companion_limit) {
    const auto companion = companion_roots(poly);
    std::vector<double> companion_phases;
    double modulus_dev = 0.0;
    for (const auto& z : companion) {
      modulus_dev = std::max(modulus_dev, std::abs(std::abs(z) - 1.0));
      companion_phases.push_back(wrap_phase(std::arg(z)));
    }
    std::sort(companion_phases.begin(), companion_phases.end());
    double phase_dev = 0.0;
    for (int j = 0; j < n; ++j) {
      phase_dev = std::max(phase_dev, std::abs(companion_phases[j] - result.phases[j]));
    }
    result.companion_modulus_deviation = modulus_dev;
    result.companion_phase_deviation = phase_dev;
  }
  return result;
}

std::vector<std::complex<double>> companion_roots(const PartitionPolynomial& poly) {
  const int n = poly.degree();
  if (n < 1) return {};
  const auto& a = poly.coefficients;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    companion(0, j) = -a[n - 1 - j] / a[n];
  }
  for (int j = 1; j < n; ++j) companion(j, j - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("companion matrix eigenvalue solver did not converge");
  }
  std::vector<std::complex<double>> roots(n);
  for (int j = 0; j < n; ++j) {
    roots[j] = polish_root(a, solver.eigenvalues()[j]);
  }
  return roots;
}

DephasingFactor dephasing_factor_at_phase(const PartitionPolynomial& poly, double omega) {
  const int n = poly.degree();
  std::complex<double> total{0.0, 0.0};
  for (int j = 0; j <= n; ++j) {
    const double angle = (n - 2 * j) * omega;
    total += poly.coefficients[j] * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  DephasingFactor factor;
  factor.value = total / poly.sum();
  factor.argument = poly.inverse_temperature > 0.0 ? omega / poly.inverse_temperature
                                                   : std::numeric_limits<double>::infinity();
  if (omega == 0.0) factor.argument = 0.0;
  return factor;
}

DephasingFactor dephasing_factor(const PartitionPolynomial& poly, double x) {
  DephasingFactor factor = dephasing_factor_at_phase(poly, poly.inverse_temperature * x);
  factor.argument = x;
  return factor;
}

DephasingFactor dephasing_factor_product_at_phase(const LeeYangZeroSet& zeros, double omega) {
  const int n = static_cast<int>(zeros.phases.size());
  const std::complex<double> w = std::polar(1.0, -2.0 * omega);
  std::complex<double> total = std::polar(1.0, n * omega);
  for (double phi : zeros.phases) {
    const std::complex<double> z = std::polar(1.0, phi);
    const std::complex<double> den = 1.0 - z;
    if (std::abs(den) <= std::numeric_limits<double>::epsilon()) {
      throw NumericalError("Lee-Yang zero at phase ~0; zero set is not from a ferromagnetic ring");
    }
    total *= (w - z) / den;
  }
  DephasingFactor factor;
  factor.value = total;
  factor.argument = zeros.inverse_temperature > 0.0 ? omega / zeros.inverse_temperature
                                                    : std::numeric_limits<double>::infinity();
  if (omega == 0.0) factor.argument = 0.0;
  return factor;
}

DephasingFactor dephasing_factor_product(const LeeYangZeroSet& zeros, double x) {
  DephasingFactor factor = dephasing_factor_product_at_phase(zeros, zeros.inverse_temperature * x);
  factor.argument = x;
  return factor;
}

double bath_phase(Channel channel, double eta, double t) {
  return (channel == Channel::own_bath ? 2.0 : 4.0) * eta * t;
}

double coherence_period(Channel channel, double eta) {
  return 2.0 * pi / ((channel == Channel::own_bath ? 4.0 : 8.0) * eta);
}

std::vector<double> zero_times(const LeeYangZeroSet& zeros, double eta, Channel channel) {
  if (!(eta > 0.0)) throw ValidationError("probe-bath coupling eta must be positive");
  const double rate = channel == Channel::own_bath ? 4.0 * eta : 8.0 * eta;
  std::vector<double> times;
  times.reserve(zeros.phases.size());
  for (double phi : zeros.phases) times.push_back(wrap_phase(phi) / rate);
  std::sort(times.begin(), times.end());
  return times;
}

void dephasing_factor_grid(const PartitionPolynomial& poly, std::span<const double> omegas,
                           std::span<std::complex<double>> out) {
  if (out.size() != omegas.size()) throw ValidationError("grid output size mismatch");
  const auto count = static_cast<std::ptrdiff_t>(omegas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i] = dephasing_factor_at_phase(poly, omegas[i]).value;
  }
}

void dephasing_factor_grid_serial(const PartitionPolynomial& poly, std::span<const double> omegas,
                                  std::span<std::complex<double>> out) {
  if (out.size() != omegas.size()) throw ValidationError("grid output size mismatch");
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    out[i] = dephasing_factor_at_phase(poly, omegas[i]).value;
  }
}

}  // namespace lydeph
