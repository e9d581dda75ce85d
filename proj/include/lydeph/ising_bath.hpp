#pragma once

// Zero-field partition polynomial of the periodic ferromagnetic Ising ring,
// its Lee-Yang zeros and the "analogous partition function" A(ix) that sets
// the probe dephasing.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace lydeph {

// Probe/bath coupling geometry: every probe on its own bath, or all probes on
// one shared bath.
enum class Channel { own_bath, shared_bath };

const char* to_string(Channel channel);

struct IsingRing {
  int n_spins = 0;
  double coupling = 1.0;            // nearest-neighbour lambda > 0
  double inverse_temperature = 0.0; // beta >= 0
  double field = 0.0;               // h; only h = 0 is used by the channels

  // Throws ValidationError on n_spins < 3, coupling <= 0 or beta < 0.
  void validate() const;
};

// Normalized fugacity polynomial P(z) = sum_n f_n z^n with f_0 = f_N = 1.
// The removed factor exp(beta*lambda*N) is kept as scale_log.
struct PartitionPolynomial {
  std::vector<double> coefficients;
  double scale_log = 0.0;
  double inverse_temperature = 0.0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  // beta * lambda, recovered from the scale factor.
  double coupling_product() const { return degree() > 0 ? scale_log / degree() : 0.0; }
  double sum() const;
};

struct LeeYangZeroSet {
  std::vector<double> phases;   // sorted, in (0, 2pi)
  double residual_bound = 0.0;  // max |P(e^{i phi})| / P(1) over the phases
  // max | |z| - 1 | over the polished companion roots, or NaN when the
  // cross-check was not run.
  double companion_modulus_deviation = 0.0;
  // max phase distance between companion roots and bisection roots (NaN if skipped).
  double companion_phase_deviation = 0.0;
  double inverse_temperature = 0.0;
};

struct DephasingFactor {
  std::complex<double> value{1.0, 0.0};
  double argument = 0.0;  // x in A(ix)

  double real() const { return value.real(); }
};

struct ZeroSearchOptions {
  int initial_samples_per_spin = 8;
  int max_samples_per_spin = 512;
  // Companion-matrix cross-check runs for N_b up to this size.
  int companion_limit = 40;
};

PartitionPolynomial partition_coefficients(const IsingRing& ring);

// Exhaustive 2^N enumeration; rejects rings with more than 24 spins.
PartitionPolynomial partition_coefficients_bruteforce(const IsingRing& ring);

// Q(phi) = e^{-iN phi/2} P(e^{i phi}), real for a palindromic P.
// Direct coefficient sum; loses all digits once |Q| << eps * P(1).
double reduced_partition_sum(const PartitionPolynomial& poly, double phi);
// Same function through the 2x2 transfer matrix of the ring; accurate to
// relative precision on the whole circle.
double reduced_partition_transfer(const PartitionPolynomial& poly, double phi);

LeeYangZeroSet lee_yang_zeros(const PartitionPolynomial& poly, const ZeroSearchOptions& options = {});

// Companion-matrix roots of P, Newton-polished in quad precision.
std::vector<std::complex<double>> companion_roots(const PartitionPolynomial& poly);

// A(ix) = e^{i beta N x} sum f_n e^{-2i beta x n} / sum f_n.
DephasingFactor dephasing_factor(const PartitionPolynomial& poly, double x);
// A as a function of the reduced phase omega = beta * x; well defined at beta = 0.
DephasingFactor dephasing_factor_at_phase(const PartitionPolynomial& poly, double omega);

// Zero-product form of A. Throws NumericalError when a phase sits at 0.
DephasingFactor dephasing_factor_product(const LeeYangZeroSet& zeros, double x);
DephasingFactor dephasing_factor_product_at_phase(const LeeYangZeroSet& zeros, double omega);

// omega = beta * x at time t: 2 eta t for own baths, 4 eta t for a shared bath.
double bath_phase(Channel channel, double eta, double t);

// Period of A^2 (own baths) or |A'| (shared bath) in t.
double coherence_period(Channel channel, double eta);

// Times within one coherence period at which the dephasing factor vanishes:
// phi_n / (4 eta) for own baths, phi_n / (8 eta) for a shared bath. Sorted.
std::vector<double> zero_times(const LeeYangZeroSet& zeros, double eta, Channel channel = Channel::own_bath);

// Grid kernels: A at many reduced phases. The OpenMP version and the serial
// reference produce identical values.
void dephasing_factor_grid(const PartitionPolynomial& poly, std::span<const double> omegas,
                           std::span<std::complex<double>> out);
void dephasing_factor_grid_serial(const PartitionPolynomial& poly, std::span<const double> omegas,
                                  std::span<std::complex<double>> out);

}  // namespace lydeph
