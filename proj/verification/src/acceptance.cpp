#include "lydeph/verification/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "lydeph/channels.hpp"
#include "lydeph/error.hpp"
#include "lydeph/experiments.hpp"
#include "lydeph/ising_bath.hpp"
#include "lydeph/observables.hpp"
#include "lydeph/verification/oracles.hpp"

namespace lydeph::verification {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kEta = 0.01;

using Check = CriterionResult (*)();

struct Detail {
  std::ostringstream out;
  Detail() { out << std::setprecision(3); }
  template <class T>
  Detail& operator<<(const T& v) {
    out << v;
    return *this;
  }
  std::string str() const { return out.str(); }
};

CriterionResult make(int id, const char* title, bool passed, const Detail& detail) {
  return {id, title, passed, detail.str()};
}

IsingRing ring_of(int n, double beta) { return IsingRing{n, 1.0, beta, 0.0}; }

Scenario scenario_of(int nb, double beta, int probes, double theta, Channel channel, double t_max, int steps = 0) {
  Scenario s;
  s.ring = ring_of(nb, beta);
  s.oat = OatParameters{probes, theta, kEta};
  s.channel = channel;
  s.t_max = t_max;
  s.steps = steps > 0 ? steps : adaptive_steps(s.ring, channel, kEta, t_max);
  return s;
}

double nearest(const std::vector<double>& values, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (double v : values) best = std::min(best, std::abs(v - x));
  return best;
}

CriterionResult unit_circle() {
  double worst_companion = 0.0;
  double worst_exact = 0.0;
  bool counts_ok = true;
  for (int n : {4, 10, 40, 100}) {
    for (double k : {0.25, 0.5, 2.0, 10.0}) {
      const LeeYangZeroSet zeros = lee_yang_zeros(partition_coefficients(ring_of(n, k)));
      counts_ok = counts_ok && static_cast<int>(zeros.phases.size()) == n;
      if (n <= 40) worst_companion = std::max(worst_companion, zeros.companion_modulus_deviation);
      const std::vector<double> exact = exact_ring_zero_phases(n, k);
      for (std::size_t i = 0; i < exact.size() && i < zeros.phases.size(); ++i) {
        worst_exact = std::max(worst_exact, std::abs(zeros.phases[i] - exact[i]));
      }
    }
  }
  const bool ok = counts_ok && worst_companion < 1e-8 && worst_exact < 1e-8;
  return make(1, "unit-circle theorem", ok,
              Detail() << "N_b roots on |z|=1 for every case: " << (counts_ok ? "yes" : "no")
                       << "; max ||z|-1| of polished companion roots (N_b<=40) " << worst_companion
                       << "; max phase error vs transfer-matrix zeros " << worst_exact);
}

CriterionResult infinite_temperature() {
  double worst_phase = 0.0;
  double worst_coefficient = 0.0;
  bool counts_ok = true;
  for (int n : {4, 10, 11, 40, 100}) {
    const PartitionPolynomial poly = partition_coefficients(ring_of(n, 0.0));
    const LeeYangZeroSet zeros = lee_yang_zeros(poly);
    counts_ok = counts_ok && static_cast<int>(zeros.phases.size()) == n;
    for (double phi : zeros.phases) worst_phase = std::max(worst_phase, std::abs(phi - pi));
    double binomial = 1.0;
    for (int j = 0; j <= n; ++j) {
      worst_coefficient = std::max(worst_coefficient, std::abs(poly.coefficients[j] - binomial) / binomial);
      binomial = binomial * (n - j) / (j + 1);
    }
  }
  const bool ok = counts_ok && worst_phase < 1e-10 && worst_coefficient < 1e-12;
  return make(2, "beta = 0 degeneracy at z = -1", ok,
              Detail() << "max |phase - pi| " << worst_phase << "; coefficients vs binomial(N_b, n) rel "
                       << worst_coefficient);
}

CriterionResult cold_uniformity() {
  const int n = 100;
  const LeeYangZeroSet zeros = lee_yang_zeros(partition_coefficients(ring_of(n, 10.0)));
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    worst = std::max(worst, std::abs(zeros.phases[k] - (2.0 * k + 1.0) * pi / n));
  }
  return make(3, "low-temperature zero uniformity", zeros.phases.size() == 100u && worst < 1e-3,
              Detail() << "N_b=100, beta*lambda=10: max |phi_n - (2n-1)pi/N_b| = " << worst);
}

CriterionResult coefficient_oracle() {
  double worst = 0.0;
  int cases = 0;
  for (int n = 3; n <= 16; ++n) {
    for (double beta : {0.0, 0.25, 0.5, 2.0, 10.0}) {
      const PartitionPolynomial fast = partition_coefficients(ring_of(n, beta));
      const PartitionPolynomial brute = partition_coefficients_bruteforce(ring_of(n, beta));
      for (int j = 0; j <= n; ++j) {
        const double b = brute.coefficients[j];
        const double diff = std::abs(fast.coefficients[j] - b);
        worst = std::max(worst, b != 0.0 ? diff / b : diff);
      }
      ++cases;
    }
  }
  return make(4, "closed-form coefficients vs enumeration", worst <= 1e-12,
              Detail() << cases << " rings (N_b=3..16, 5 beta values): max relative error " << worst);
}

CriterionResult coherence_period_check() {
  const double period = coherence_period(Channel::own_bath, kEta);
  const int half = 2000;
  double worst = 0.0;
  for (auto [nb, beta] : {std::pair{10, 0.5}, std::pair{15, 2.0}, std::pair{40, 0.5}}) {
    const Scenario s = scenario_of(nb, beta, 3, pi / 2, Channel::own_bath, 2.0 * period, 2 * half + 1);
    const ObservableSeries series = run_scenario(s);
    for (int i = 0; i <= half; ++i) {
      const int j = i + half;
      worst = std::max({worst, std::abs(series.times[j] - series.times[i] - period),
                        std::abs(std::abs(series.a_factor[j]) - std::abs(series.a_factor[i])),
                        std::abs(series.coherence[j] - series.coherence[i]),
                        std::abs(series.concurrence_rescaled[j] - series.concurrence_rescaled[i]),
                        std::abs(series.xi2[j] - series.xi2[i]), std::abs(series.xi2_prime[j] - series.xi2_prime[i])});
    }
  }
  return make(5, "coherence period 2pi/(4 eta)", worst < 1e-8,
              Detail() << "T=" << period << "; max |value(t+T) - value(t)| over 3 baths, all columns: " << worst);
}

CriterionResult zero_correspondence() {
  const double period = coherence_period(Channel::own_bath, kEta);
  const Scenario s = scenario_of(10, 0.5, 3, pi / 2, Channel::own_bath, period);
  const ObservableSeries series = run_scenario(s);
  const std::vector<double> detected = detect_coherence_zeros(s, series);
  const std::vector<double> expected =
      zero_times(lee_yang_zeros(partition_coefficients(s.ring)), kEta, Channel::own_bath);
  double worst = detected.size() == expected.size() ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < detected.size() && i < expected.size(); ++i) {
    worst = std::max(worst, std::abs(detected[i] - expected[i]));
  }
  return make(6, "coherence zeros at Lee-Yang times", worst <= 1e-4 * period,
              Detail() << detected.size() << " detected vs " << expected.size()
                       << " expected; max |t_detected - phi_n/(4 eta)| / T = " << worst / period);
}

CriterionResult peak_count() {
  const double period = coherence_period(Channel::own_bath, kEta);
  bool ok = true;
  Detail detail;
  for (int nb : {10, 20}) {
    const Scenario s = scenario_of(nb, 0.5, 3, pi / 2, Channel::own_bath, 2.0 * period);
    const int peaks = count_recovery_peaks(run_scenario(s));
    ok = ok && peaks == nb;
    if (nb != 10) detail << "; ";
    detail << "N_b=" << nb << ": " << peaks << " peaks";
  }
  return make(7, "N_b coherence peaks per period", ok, detail);
}

CriterionResult domain_centers() {
  bool ok = true;
  Detail detail;
  for (Channel channel : {Channel::own_bath, Channel::shared_bath}) {
    const double period = coherence_period(channel, kEta);
    const Scenario s = scenario_of(100, 10.0, 3, pi / 2, channel, period);
    const ObservableSeries series = run_scenario(s);
    const double step = s.t_max / (s.steps - 1);
    const std::vector<double> zeros =
        zero_times(lee_yang_zeros(partition_coefficients(s.ring)), kEta, channel);
    int interior = 0;
    double worst = 0.0;
    for (const VanishingDomain& d : vanishing_domains(series)) {
      if (d.touches_boundary) continue;
      ++interior;
      worst = std::max(worst, nearest(zeros, d.center));
    }
    ok = ok && interior > 0 && worst <= step;
    if (channel == Channel::shared_bath) detail << "; ";
    detail << "channel " << to_string(channel) << ": " << interior << " interior domains, max center offset "
           << worst / step << " grid steps";
  }
  return make(8, "concurrence-vanishing domain centers", ok, detail);
}

CriterionResult cmax_scaling() {
  const std::vector<int> probes{3, 4, 5, 6, 7, 8};
  const FitResult fit = fit_cmax_scaling(probes, pi / 2, ring_of(100, 10.0), kEta);
  const double target = -std::log(2.0);
  const double rel = std::abs(fit.alpha / target - 1.0);
  return make(9, "C_max scaling exponent -ln 2", rel <= 0.02,
              Detail() << "alpha=" << std::setprecision(6) << fit.alpha << " vs " << target << " ("
                       << std::setprecision(3) << 100.0 * rel << "% off, tolerance 2%); intercept "
                       << fit.intercept << ", RMS residual " << fit.residual);
}

CriterionResult shared_bath_identity() {
  std::mt19937_64 rng(1729);
  std::uniform_int_distribution<int> bath(4, 60);
  std::uniform_int_distribution<int> probes(2, 8);
  std::uniform_real_distribution<double> beta(0.1, 10.0);
  std::uniform_real_distribution<double> theta(0.05, pi - 0.05);
  double worst = 0.0;
  long checked = 0;
  for (int k = 0; k < 20; ++k) {
    const Scenario s = scenario_of(bath(rng), beta(rng), probes(rng), theta(rng), Channel::shared_bath,
                                   coherence_period(Channel::shared_bath, kEta), 801);
    const TwoQubitXState initial = oat_reduced_state(s.oat);
    const ObservableSeries series = run_scenario(s);
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (series.a_factor[i] * std::abs(initial.u) < initial.y) continue;
      worst = std::max(worst, std::abs(series.xi2[i] + series.concurrence_rescaled[i] - 1.0));
      ++checked;
    }
  }
  return make(10, "shared-bath identity xi^2 + C_r = 1", checked > 0 && worst <= 1e-12,
              Detail() << checked << " squeezed grid points in 20 scenarios; max |xi^2 + C_r - 1| " << worst);
}

CriterionResult improvement_bound() {
  double worst_negative = 0.0;
  double worst_max = 0.0;
  double reference = 0.0;
  for (int n = 2; n <= 8; ++n) {
    for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6}) {
      const TwoQubitXState initial = oat_reduced_state(OatParameters{n, theta, kEta});
      const int coarse_samples = 20001;
      const GridMaximum coarse = max_improvement_on_grid(initial, n, coarse_samples);
      const double h = 1.0 / (coarse_samples - 1);
      const GridMaximum fine = max_improvement_on_grid(initial, n, 20001, std::max(0.0, coarse.a - h),
                                                       std::min(1.0, coarse.a + h));
      DephasingFactor one;
      const double closed = spin_squeezing(initial, Channel::own_bath, one, n).improvement_max;
      worst_max = std::max(worst_max, std::abs(fine.value - closed));
      if (n == 3 && theta == pi / 2) reference = closed;
      if (std::abs(initial.u) < initial.y) continue;  // not squeezed
      for (int i = 0; i <= 4000; ++i) {
        DephasingFactor f;
        f.value = -1.0 + i / 2000.0;
        worst_negative = std::min(worst_negative, spin_squeezing(initial, Channel::own_bath, f, n).improvement);
      }
    }
  }
  const bool ok = worst_negative >= -1e-12 && worst_max <= 1e-6 && std::abs(reference - 0.27639) < 5e-6;
  return make(11, "own-bath squeezing improvement", ok,
              Detail() << "min improvement " << worst_negative << "; max |grid max - 2(N-1)(1-y/|u|)y| " << worst_max
                       << "; N=3, theta=pi/2 value " << std::setprecision(6) << reference);
}

CriterionResult stable_coherence() {
  const double period = coherence_period(Channel::shared_bath, kEta);
  const Scenario s = scenario_of(100, 0.5, 3, pi, Channel::shared_bath, period, 2001);
  const ObservableSeries series = run_scenario(s);
  const double target = (1.0 - std::pow(std::cos(s.oat.twist_angle), s.oat.n_probes - 2)) / 4.0;
  double worst = 0.0;
  int points = 0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (series.times[i] < 0.25 * period || series.times[i] > 0.75 * period) continue;
    worst = std::max(worst, std::abs(series.coherence[i] - target) / target);
    ++points;
  }
  return make(12, "shared-bath stable coherence", points > 0 && worst < 0.01,
              Detail() << "plateau [T/4, 3T/4], " << points << " points: max relative deviation from " << target
                       << " is " << worst);
}

CriterionResult kraus_wootters() {
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<int> probes(2, 8);
  std::uniform_real_distribution<double> theta(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> factor(-1.0, 1.0);
  double state_err[2] = {0.0, 0.0};
  double conc_err[2] = {0.0, 0.0};
  for (int c = 0; c < 2; ++c) {
    const Channel channel = c == 0 ? Channel::own_bath : Channel::shared_bath;
    for (int k = 0; k < 500; ++k) {
      const int n = probes(rng);
      const TwoQubitXState initial = oat_reduced_state(OatParameters{n, theta(rng), kEta});
      DephasingFactor f;
      f.value = factor(rng);
      const double a = f.value.real();
      const KrausSet kraus = channel == Channel::own_bath ? on_each_qubit(own_bath_kraus(a)) : shared_bath_kraus(a);
      const Matrix4c oracle = kraus_apply(initial.to_matrix(), kraus);
      const Matrix4c closed = evolve(initial, channel, f).to_matrix();
      state_err[c] = std::max(state_err[c], (closed - oracle).cwiseAbs().maxCoeff());
      const double generic = concurrence_generic(oracle, n).concurrence;
      conc_err[c] = std::max(conc_err[c], std::abs(concurrence(initial, channel, f, n).concurrence - generic));
    }
  }
  const bool ok = std::max(state_err[0], state_err[1]) <= 1e-12 && std::max(conc_err[0], conc_err[1]) <= 1e-10;
  return make(13, "closed forms vs Kraus and Wootters", ok,
              Detail() << "state error I/II " << state_err[0] << "/" << state_err[1] << "; concurrence error I/II "
                       << conc_err[0] << "/" << conc_err[1]);
}

CriterionResult oat_oracle() {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k < 32; ++k) {
      const double theta = 2.0 * pi * k / 32.0;
      const Matrix4c exact = exact_oat_reduced_state(n, theta);
      const Matrix4c closed = oat_reduced_state(OatParameters{n, theta, kEta}).to_matrix();
      worst = std::max(worst, (exact - closed).cwiseAbs().maxCoeff());
    }
  }
  return make(14, "OAT two-qubit reduction vs exact state", worst <= 1e-10,
              Detail() << "N=2..10, 32 angles: max entry error " << worst);
}

constexpr Check kChecks[kCriterionCount] = {
    unit_circle,      infinite_temperature, cold_uniformity, coefficient_oracle, coherence_period_check,
    zero_correspondence, peak_count,        domain_centers,  cmax_scaling,       shared_bath_identity,
    improvement_bound, stable_coherence,    kraus_wootters,  oat_oracle};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) throw ValidationError("no acceptance criterion " + std::to_string(id));
  try {
    return kChecks[id - 1]();
  } catch (const std::exception& e) {
    return {id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what()};
  }
}

std::vector<CriterionResult> run_all_criteria() {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) results.push_back(run_criterion(id));
  return results;
}

std::string format_result(const CriterionResult& result) {
  return std::string(result.passed ? "[PASS] " : "[FAIL] ") + std::to_string(result.id) + " " + result.title +
         ": " + result.detail;
}

}  // namespace lydeph::verification
