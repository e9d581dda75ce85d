#pragma once

// Time-series scenarios over the dephasing channels and the analyses that
// compare them with the Lee-Yang zeros.

#include <filesystem>
#include <span>
#include <vector>

#include "lydeph/channels.hpp"
#include "lydeph/ising_bath.hpp"
#include "lydeph/observables.hpp"

namespace lydeph {

struct Scenario {
  IsingRing ring;
  OatParameters oat;
  Channel channel = Channel::own_bath;
  double t_max = 0.0;
  int steps = 0;  // number of grid points on [0, t_max]
  std::filesystem::path output;

  void validate() const;
};

struct ObservableSeries {
  std::vector<double> times;
  std::vector<double> a_factor;  // A (own baths) or |A'| (shared bath)
  std::vector<double> coherence;
  std::vector<double> concurrence_rescaled;
  std::vector<double> xi2;
  std::vector<double> xi2_prime;

  // Not part of the CSV; filled by run_scenario.
  Channel channel = Channel::own_bath;
  double period = 0.0;           // coherence period in t
  double coherence_floor = 0.0;  // coherence when the factor vanishes

  std::size_t size() const { return times.size(); }
  void resize(std::size_t n);
};

struct VanishingDomain {
  double start = 0.0;
  double center = 0.0;
  double end = 0.0;
  bool touches_boundary = false;
};

struct FitResult {
  double alpha = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
};

// Grid size giving at least `samples_between_zeros` points between adjacent
// zero times of the dephasing factor.
int adaptive_steps(const IsingRing& ring, Channel channel, double eta, double t_max,
                   int samples_between_zeros = 40);

// OpenMP over grid points; run_scenario_serial is the reference used by the
// tests and the benchmark. Both give bit-identical series.
ObservableSeries run_scenario(const Scenario& scenario);
ObservableSeries run_scenario_serial(const Scenario& scenario);

// Times where the channel's dephasing factor vanishes (coherence at its
// floor), refined on the analytic factor. epsilon is relative to the largest
// coherence excess above the floor.
std::vector<double> detect_coherence_zeros(const Scenario& scenario, const ObservableSeries& series,
                                           double epsilon = 1e-6);

// Maximal runs of grid points with C_r <= epsilon.
std::vector<VanishingDomain> vanishing_domains(const ObservableSeries& series, double epsilon = 1e-12);

// Strict local maxima of the coherence within one period after its first
// local minimum.
int count_recovery_peaks(const ObservableSeries& series);

// Largest concurrence C (not rescaled) over one own-bath period.
double max_concurrence_over_period(const IsingRing& ring, int n_probes, double theta, double eta);

// Least-squares fit ln C_max = alpha (N - 2) + intercept.
FitResult fit_cmax_scaling(std::span<const int> n_values, double theta, const IsingRing& ring, double eta = 0.01);

}  // namespace lydeph
