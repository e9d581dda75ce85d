#include "lydeph/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "lydeph/error.hpp"

namespace lydeph {

namespace {

constexpr double kFactorTolerance = 1e-9;
constexpr std::int64_t kMaxGridPoints = 50'000'000;

std::string describe(const Scenario& s) {
  std::ostringstream out;
  out << "scenario N_b=" << s.ring.n_spins << " beta=" << s.ring.inverse_temperature
      << " lambda=" << s.ring.coupling << " probes=" << s.oat.n_probes << " theta=" << s.oat.twist_angle
      << " eta=" << s.oat.eta << " channel " << to_string(s.channel) << ": ";
  return out.str();
}

[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ValidationError& e) {
    throw ValidationError(context + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(context + e.what());
  } catch (const IoError& e) {
    throw IoError(context + e.what());
  }
}

// Everything a grid point needs, computed once per scenario.
struct Pipeline {
  PartitionPolynomial poly;
  TwoQubitXState initial;
  Channel channel = Channel::own_bath;
  double eta = 0.0;
  int n_probes = 2;

  explicit Pipeline(const Scenario& s)
      : poly(partition_coefficients(s.ring)),
        initial(oat_reduced_state(s.oat)),
        channel(s.channel),
        eta(s.oat.eta),
        n_probes(s.oat.n_probes) {}

  // Real dephasing factor at time t; the imaginary part is rounding only.
  DephasingFactor factor_at(double t) const {
    DephasingFactor f = dephasing_factor_at_phase(poly, bath_phase(channel, eta, t));
    const double re = f.value.real();
    if (std::abs(f.value.imag()) > kFactorTolerance || std::abs(re) > 1.0 + kFactorTolerance ||
        !std::isfinite(re)) {
      std::ostringstream msg;
      msg << "dephasing factor " << f.value << " at t=" << t << " is not a real number in [-1, 1]";
      throw NumericalError(msg.str());
    }
    f.value = std::clamp(re, -1.0, 1.0);
    return f;
  }

  double excess_coherence(double t) const {
    return coherence(initial, channel, factor_at(t)) - floor();
  }

  double floor() const { return channel == Channel::own_bath ? 0.0 : 2.0 * std::abs(initial.y); }

  void fill(ObservableSeries& s, std::size_t i) const {
    const DephasingFactor f = factor_at(s.times[i]);
    const double a = f.value.real();
    s.a_factor[i] = channel == Channel::own_bath ? a : std::abs(a);
    s.coherence[i] = coherence(initial, channel, f);
    s.concurrence_rescaled[i] = concurrence(initial, channel, f, n_probes).rescaled;
    const SqueezingReport sq = spin_squeezing(initial, channel, f, n_probes);
    s.xi2[i] = sq.xi2;
    s.xi2_prime[i] = sq.xi2_prime;
  }
};

ObservableSeries prepare(const Scenario& s) {
  ObservableSeries series;
  series.resize(static_cast<std::size_t>(s.steps));
  const double last = static_cast<double>(s.steps - 1);
  for (int i = 0; i < s.steps; ++i) series.times[i] = s.t_max * (i / last);
  series.times.back() = s.t_max;
  series.channel = s.channel;
  series.period = coherence_period(s.channel, s.oat.eta);
  return series;
}

}  // namespace

void Scenario::validate() const {
  ring.validate();
  oat.validate();
  if (ring.field != 0.0) throw ValidationError("probe dephasing requires zero bath field h");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be positive and finite");
  if (steps < 2) throw ValidationError("steps must be at least 2, got " + std::to_string(steps));
}

void ObservableSeries::resize(std::size_t n) {
  times.resize(n);
  a_factor.resize(n);
  coherence.resize(n);
  concurrence_rescaled.resize(n);
  xi2.resize(n);
  xi2_prime.resize(n);
}

int adaptive_steps(const IsingRing& ring, Channel channel, double eta, double t_max, int samples_between_zeros) {
  ring.validate();
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ValidationError("eta must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("t_max must be positive and finite");
  if (samples_between_zeros < 1) throw ValidationError("samples_between_zeros must be positive");

  const double period = coherence_period(channel, eta);
  const std::vector<double> times = zero_times(lee_yang_zeros(partition_coefficients(ring)), eta, channel);
  double gap = period;
  const double merge = 1e-12 * period;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double next = i + 1 < times.size() ? times[i + 1] : times.front() + period;
    const double d = next - times[i];
    if (d > merge) gap = std::min(gap, d);
  }
  const double points = std::ceil(t_max * samples_between_zeros / gap) + 1.0;
  if (points > static_cast<double>(kMaxGridPoints)) {
    throw ValidationError("adaptive grid needs " + std::to_string(points) + " points; pass an explicit step count");
  }
  return std::max(2, static_cast<int>(points));
}

ObservableSeries run_scenario(const Scenario& scenario) {
  const std::string context = describe(scenario);
  try {
    scenario.validate();
    const Pipeline pipeline(scenario);
    ObservableSeries series = prepare(scenario);
    const auto n = static_cast<std::int64_t>(series.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        pipeline.fill(series, static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(lydeph_scenario_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    series.coherence_floor = pipeline.floor();
    return series;
  } catch (const Error&) {
    rethrow_with_context(context);
  }
}

ObservableSeries run_scenario_serial(const Scenario& scenario) {
  const std::string context = describe(scenario);
  try {
    scenario.validate();
    const Pipeline pipeline(scenario);
    ObservableSeries series = prepare(scenario);
    for (std::size_t i = 0; i < series.size(); ++i) pipeline.fill(series, i);
    series.coherence_floor = pipeline.floor();
    return series;
  } catch (const Error&) {
    rethrow_with_context(context);
  }
}

std::vector<double> detect_coherence_zeros(const Scenario& scenario, const ObservableSeries& series,
                                           double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  std::vector<double> found;
  const std::size_t n = series.size();
  if (n < 2) return found;

  const std::string context = describe(scenario);
  try {
    scenario.validate();
    const Pipeline pipeline(scenario);
    const double floor = pipeline.floor();
    double scale = 0.0;
    for (double c : series.coherence) scale = std::max(scale, c - floor);
    if (!(scale > 0.0)) return found;

    auto signed_factor = [&](double t) { return pipeline.factor_at(t).value.real(); };
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = signed_factor(series.times[i]);

    std::vector<double> candidates;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] == 0.0) {
        candidates.push_back(series.times[i]);
        continue;
      }
      if (i + 1 < n && a[i + 1] != 0.0 && std::signbit(a[i]) != std::signbit(a[i + 1])) {
        std::uintmax_t iterations = 200;
        const auto bracket = boost::math::tools::toms748_solve(
            signed_factor, series.times[i], series.times[i + 1], a[i], a[i + 1],
            boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2), iterations);
        candidates.push_back(0.5 * (bracket.first + bracket.second));
      }
      // Touching zeros (even multiplicity) show up as sampled minima of |A|
      // without a sign change.
      if (i > 0 && i + 1 < n && std::abs(a[i]) < std::abs(a[i - 1]) && std::abs(a[i]) <= std::abs(a[i + 1]) &&
          std::signbit(a[i - 1]) == std::signbit(a[i]) && std::signbit(a[i + 1]) == std::signbit(a[i])) {
        const auto best = boost::math::tools::brent_find_minima(
            [&](double t) { return std::abs(signed_factor(t)); }, series.times[i - 1], series.times[i + 1],
            std::numeric_limits<double>::digits / 2);
        candidates.push_back(best.first);
      }
    }

    std::sort(candidates.begin(), candidates.end());
    const double merge = 1e-9 * std::max(series.period, series.times.back() - series.times.front());
    for (double t : candidates) {
      if (pipeline.excess_coherence(t) / scale >= epsilon) continue;
      if (!found.empty() && t - found.back() <= merge) continue;
      found.push_back(t);
    }
    return found;
  } catch (const Error&) {
    rethrow_with_context(context);
  }
}

std::vector<VanishingDomain> vanishing_domains(const ObservableSeries& series, double epsilon) {
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
  std::vector<VanishingDomain> domains;
  const std::size_t n = series.size();
  std::size_t i = 0;
  while (i < n) {
    if (series.concurrence_rescaled[i] > epsilon) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && series.concurrence_rescaled[j + 1] <= epsilon) ++j;
    VanishingDomain d;
    d.start = series.times[i];
    d.end = series.times[j];
    d.center = 0.5 * (d.start + d.end);
    d.touches_boundary = i == 0 || j + 1 == n;
    domains.push_back(d);
    i = j + 1;
  }
  return domains;
}

int count_recovery_peaks(const ObservableSeries& series) {
  const auto& c = series.coherence;
  const std::size_t n = c.size();
  if (n < 3) return 0;
  std::size_t first = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (c[i] < c[i - 1] && c[i] <= c[i + 1]) {
      first = i;
      break;
    }
  }
  if (first == 0) return 0;
  const double end = series.period > 0.0 ? series.times[first] + series.period * (1.0 + 1e-12)
                                         : std::numeric_limits<double>::infinity();
  int peaks = 0;
  for (std::size_t i = first + 1; i + 1 < n && series.times[i] <= end; ++i) {
    if (c[i] > c[i - 1] && c[i] >= c[i + 1]) ++peaks;
  }
  return peaks;
}

double max_concurrence_over_period(const IsingRing& ring, int n_probes, double theta, double eta) {
  Scenario s;
  s.ring = ring;
  s.oat = OatParameters{n_probes, theta, eta};
  s.channel = Channel::own_bath;
  s.t_max = coherence_period(Channel::own_bath, eta);
  s.steps = adaptive_steps(ring, Channel::own_bath, eta, s.t_max);
  const ObservableSeries series = run_scenario(s);
  const double best = *std::max_element(series.concurrence_rescaled.begin(), series.concurrence_rescaled.end());
  return best / (n_probes - 1);
}

FitResult fit_cmax_scaling(std::span<const int> n_values, double theta, const IsingRing& ring, double eta) {
  ring.validate();
  if (ring.inverse_temperature < 10.0) {
    throw ValidationError("C_max fit needs a cold bath (beta >= 10), got beta=" +
                          std::to_string(ring.inverse_temperature));
  }
  const std::set<int> distinct(n_values.begin(), n_values.end());
  if (distinct.size() < 3) throw ValidationError("C_max fit needs at least three distinct probe counts");
  if (*distinct.begin() < 2) throw ValidationError("probe counts must be at least 2");

  std::vector<double> x;
  std::vector<double> y;
  for (int n : n_values) {
    const double cmax = max_concurrence_over_period(ring, n, theta, eta);
    if (!(cmax > 0.0)) {
      throw NumericalError("C_max = 0 at N=" + std::to_string(n) + "; the state is not entangled at theta=" +
                           std::to_string(theta));
    }
    x.push_back(n - 2.0);
    y.push_back(std::log(cmax));
  }

  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  FitResult fit;
  fit.alpha = sxy / sxx;
  fit.intercept = my - fit.alpha * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.alpha * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  return fit;
}

}  // namespace lydeph
