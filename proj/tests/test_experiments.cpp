#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lydeph/error.hpp"
#include "lydeph/experiments.hpp"
#include "lydeph/verification/oracles.hpp"

using namespace lydeph;
using std::numbers::pi;

namespace {

Scenario make_scenario(int nb, double beta, Channel channel, double t_max, int steps, int probes = 3,
                       double theta = pi / 2) {
  Scenario s;
  s.ring = IsingRing{nb, 1.0, beta, 0.0};
  s.oat = OatParameters{probes, theta, 0.01};
  s.channel = channel;
  s.t_max = t_max;
  s.steps = steps;
  return s;
}

double period_of(Channel c) { return coherence_period(c, 0.01); }

std::string message_of(const Scenario& s) {
  try {
    run_scenario(s);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

std::vector<double> local_extrema(const ObservableSeries& series, bool minima) {
  std::vector<double> out;
  const auto& c = series.coherence;
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    const bool hit = minima ? (c[i] < c[i - 1] && c[i] <= c[i + 1]) : (c[i] > c[i - 1] && c[i] >= c[i + 1]);
    if (hit) out.push_back(series.times[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("scenario validation reports the scenario") {
  auto s = make_scenario(10, 0.5, Channel::own_bath, 100.0, 1);
  const std::string msg = message_of(s);
  CHECK(msg.find("steps") != std::string::npos);
  CHECK(msg.find("N_b=10") != std::string::npos);
  CHECK(msg.find("channel I") != std::string::npos);

  s.steps = 10;
  s.t_max = 0.0;
  CHECK(message_of(s).find("t_max") != std::string::npos);
  s.t_max = -1.0;
  CHECK_THROWS_AS(run_scenario_serial(s), ValidationError);

  s.t_max = 100.0;
  s.ring.field = 0.1;
  CHECK(message_of(s).find("field") != std::string::npos);

  s.ring.field = 0.0;
  s.ring.n_spins = 2;
  CHECK_THROWS_AS(run_scenario(s), ValidationError);
  s.ring.n_spins = 10;
  s.oat.n_probes = 1;
  CHECK_THROWS_AS(run_scenario(s), ValidationError);
}

TEST_CASE("series layout and the t = 0 row") {
  for (Channel c : {Channel::own_bath, Channel::shared_bath}) {
    const auto s = make_scenario(10, 0.5, c, 100.0, 11);
    const auto series = run_scenario(s);
    REQUIRE(series.size() == 11);
    CHECK(series.times.front() == 0.0);
    CHECK(series.times.back() == 100.0);
    CHECK(series.times[3] == doctest::Approx(30.0).epsilon(1e-15));
    CHECK(series.a_factor.front() == 1.0);
    const double c0 = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(series.concurrence_rescaled.front() == doctest::Approx(c0).epsilon(1e-14));
    CHECK(series.coherence.front() == doctest::Approx((std::sqrt(5.0) + 1.0) / 4.0).epsilon(1e-14));
    CHECK(series.xi2.front() == doctest::Approx(1.0 - c0).epsilon(1e-14));
    CHECK(series.channel == c);
    CHECK(series.period == period_of(c));
  }
}

TEST_CASE("own-bath factor at a frozen point") {
  // N_b = 10, beta*lambda = 0.5, phase 2*eta*t = 0.2 at t = 10.
  const auto series = run_scenario(make_scenario(10, 0.5, Channel::own_bath, 20.0, 3));
  CHECK(series.a_factor[1] == doctest::Approx(0.55565213587695965).epsilon(1e-12));
  const double a2 = 0.55565213587695965 * 0.55565213587695965;
  const double c0 = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(series.concurrence_rescaled[1] == doctest::Approx(std::max(0.0, a2 * c0 - (1 - a2) / 2)).epsilon(1e-12));

  // Shared bath at the same time runs at phase 0.4.
  const auto shared = run_scenario(make_scenario(10, 0.5, Channel::shared_bath, 20.0, 3));
  CHECK(shared.a_factor[1] == doctest::Approx(0.0080793479841010103).epsilon(1e-10));
}

TEST_CASE("warm large bath dephases quickly") {
  const double period = period_of(Channel::own_bath);
  const auto series = run_scenario(make_scenario(100, 0.5, Channel::own_bath, period / 4, 201));
  CHECK(series.coherence.back() < 1e-2);
  CHECK(series.concurrence_rescaled.back() == 0.0);
  // Coherence returns at the full period.
  const auto full = run_scenario(make_scenario(100, 0.5, Channel::own_bath, period, 5));
  CHECK(full.coherence.back() == doctest::Approx(full.coherence.front()).epsilon(1e-9));
}

TEST_CASE("cold bath: minima and maxima of the coherence") {
  const int nb = 20;
  const double period = period_of(Channel::own_bath);
  const auto s = make_scenario(nb, 10.0, Channel::own_bath, period, 0);
  auto scenario = s;
  scenario.steps = adaptive_steps(s.ring, s.channel, 0.01, period);
  const auto series = run_scenario(scenario);
  const double dt = series.times[1] - series.times[0];

  const auto minima = local_extrema(series, true);
  REQUIRE(minima.size() == nb);
  for (int k = 1; k <= nb; ++k) {
    CHECK(std::abs(minima[k - 1] - (2 * k - 1) * period / (2 * nb)) <= dt);
  }
  const auto maxima = local_extrema(series, false);
  REQUIRE(maxima.size() == nb - 1);
  for (int k = 1; k < nb; ++k) CHECK(std::abs(maxima[k - 1] - k * period / nb) <= dt);
}

TEST_CASE("adaptive grid") {
  const IsingRing ring{20, 1.0, 0.5, 0.0};
  const double period = period_of(Channel::own_bath);
  const int steps = adaptive_steps(ring, Channel::own_bath, 0.01, period);
  // 20 zeros per period and at least 40 samples between neighbours.
  CHECK(steps >= 20 * 40);
  CHECK(adaptive_steps(ring, Channel::own_bath, 0.01, 2 * period) >= 2 * steps - 2);
  CHECK_THROWS_AS(adaptive_steps(ring, Channel::own_bath, 0.0, period), ValidationError);
  CHECK_THROWS_AS(adaptive_steps(ring, Channel::own_bath, 0.01, -1.0), ValidationError);
  CHECK_THROWS_AS(adaptive_steps(ring, Channel::own_bath, 0.01, 1e9), ValidationError);
}

TEST_CASE("zero detection") {
  SUBCASE("no zeros on a short window") {
    const auto s = make_scenario(10, 0.5, Channel::own_bath, 1e-3, 50);
    CHECK(detect_coherence_zeros(s, run_scenario(s)).empty());
  }
  SUBCASE("infinite temperature has one zero per period") {
    const double period = period_of(Channel::own_bath);
    for (int nb : {4, 5}) {
      const auto s = make_scenario(nb, 0.0, Channel::own_bath, period, 1001);
      const auto zeros = detect_coherence_zeros(s, run_scenario(s));
      REQUIRE(zeros.size() == 1);
      CHECK(zeros[0] == doctest::Approx(pi / (4 * 0.01)).epsilon(1e-7));
    }
  }
  SUBCASE("detected zeros agree with the Lee-Yang zeros") {
    for (int nb : {6, 12, 25, 40}) {
      for (Channel c : {Channel::own_bath, Channel::shared_bath}) {
        auto s = make_scenario(nb, 0.7, c, period_of(c), 0);
        s.steps = adaptive_steps(s.ring, c, 0.01, s.t_max);
        const auto detected = detect_coherence_zeros(s, run_scenario(s));
        const auto expected = zero_times(lee_yang_zeros(partition_coefficients(s.ring)), 0.01, c);
        REQUIRE(detected.size() == expected.size());
        for (std::size_t k = 0; k < expected.size(); ++k) {
          CHECK(std::abs(detected[k] - expected[k]) <= 1e-8 * s.t_max);
        }
      }
    }
  }
  SUBCASE("epsilon must be positive") {
    const auto s = make_scenario(10, 0.5, Channel::own_bath, 10.0, 5);
    CHECK_THROWS_AS(detect_coherence_zeros(s, run_scenario(s), 0.0), ValidationError);
  }
}

TEST_CASE("vanishing domains") {
  SUBCASE("none while entangled") {
    const auto s = make_scenario(10, 0.5, Channel::own_bath, 1.0, 20);
    CHECK(vanishing_domains(run_scenario(s)).empty());
  }
  SUBCASE("symmetric about the half period") {
    const double period = period_of(Channel::own_bath);
    const auto series = run_scenario(make_scenario(100, 0.5, Channel::own_bath, period, 4001));
    const auto domains = vanishing_domains(series);
    REQUIRE(domains.size() == 1);
    CHECK_FALSE(domains[0].touches_boundary);
    CHECK(domains[0].center == doctest::Approx(period / 2).epsilon(1e-12));
    CHECK(domains[0].start + domains[0].end == doctest::Approx(period).epsilon(1e-12));
  }
  SUBCASE("boundary runs are flagged") {
    ObservableSeries series;
    series.times = {0, 1, 2, 3};
    series.concurrence_rescaled = {0.0, 0.2, 0.3, 0.0};
    const auto domains = vanishing_domains(series);
    REQUIRE(domains.size() == 2);
    CHECK(domains[0].touches_boundary);
    CHECK(domains[1].touches_boundary);
    CHECK_THROWS_AS(vanishing_domains(series, -1.0), ValidationError);
  }
}

TEST_CASE("recovery peaks") {
  ObservableSeries flat;
  flat.times = {0, 1, 2, 3, 4};
  flat.coherence = {1, 1, 1, 1, 1};
  CHECK(count_recovery_peaks(flat) == 0);

  for (int nb : {10, 20}) {
    const double period = period_of(Channel::own_bath);
    auto s = make_scenario(nb, 10.0, Channel::own_bath, 2 * period, 0);
    s.steps = adaptive_steps(s.ring, s.channel, 0.01, s.t_max);
    CHECK(count_recovery_peaks(run_scenario(s)) == nb);
  }
}

TEST_CASE("maximal concurrence over a period is the initial one") {
  const IsingRing ring{100, 1.0, 10.0, 0.0};
  for (int n = 2; n <= 6; ++n) {
    const double theta = pi / 3;
    const auto exact = concurrence_generic(verification::exact_oat_reduced_state(n, theta));
    CHECK(max_concurrence_over_period(ring, n, theta, 0.01) == doctest::Approx(exact.concurrence).epsilon(1e-10));
  }
  const auto two = oat_reduced_state(OatParameters{2, 0.8, 0.01});
  CHECK(max_concurrence_over_period(ring, 2, 0.8, 0.01) ==
        doctest::Approx(2 * (std::abs(two.u) - two.y)).epsilon(1e-12));
}

TEST_CASE("C_max scaling fit") {
  const IsingRing ring{100, 1.0, 10.0, 0.0};
  const std::vector<int> n_values{3, 4, 5, 6, 7, 8};
  const double theta = pi / 3;
  const FitResult fit = fit_cmax_scaling(n_values, theta, ring);

  // Independent least squares on the exact 2^N states.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (int n : n_values) {
    const double c = concurrence_generic(verification::exact_oat_reduced_state(n, theta)).concurrence;
    xs.push_back(n - 2);
    ys.push_back(std::log(c));
  }
  const double m = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - alpha * sx) / m;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) rss += std::pow(ys[i] - alpha * xs[i] - intercept, 2);
  CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-9));
  CHECK(fit.intercept == doctest::Approx(intercept).epsilon(1e-9));
  CHECK(fit.residual == doctest::Approx(std::sqrt(rss / m)).epsilon(1e-6));
  CHECK(fit.alpha < 0.0);

  CHECK_THROWS_AS(fit_cmax_scaling(n_values, theta, IsingRing{100, 1.0, 5.0, 0.0}), ValidationError);
  const std::vector<int> too_few{3, 4, 4};
  CHECK_THROWS_AS(fit_cmax_scaling(too_few, theta, ring), ValidationError);
  const std::vector<int> with_one{1, 3, 4};
  CHECK_THROWS_AS(fit_cmax_scaling(with_one, theta, ring), ValidationError);
  // No entanglement at theta = 0.
  CHECK_THROWS_AS(fit_cmax_scaling(n_values, 0.0, ring), NumericalError);
}

TEST_CASE("runs are deterministic") {
  const auto s = make_scenario(17, 0.8, Channel::shared_bath, 300.0, 777, 5, 1.3);
  const auto first = run_scenario(s);
  const auto second = run_scenario(s);
  CHECK(first.a_factor == second.a_factor);
  CHECK(first.coherence == second.coherence);
  CHECK(first.concurrence_rescaled == second.concurrence_rescaled);
  CHECK(first.xi2 == second.xi2);
  CHECK(first.xi2_prime == second.xi2_prime);
}
