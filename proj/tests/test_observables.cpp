#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lydeph/channels.hpp"
#include "lydeph/error.hpp"
#include "lydeph/observables.hpp"
#include "lydeph/verification/oracles.hpp"

using namespace lydeph;
using std::numbers::pi;

namespace {

DephasingFactor real_factor(double a) {
  DephasingFactor f;
  f.value = a;
  return f;
}

const double kSqrt5 = std::sqrt(5.0);
const double kGolden = (kSqrt5 - 1.0) / 2.0;  // C_r(0) at N = 3, theta = pi/2

TwoQubitXState n3_quarter_turn() { return oat_reduced_state(OatParameters{3, pi / 2, 0.01}); }

}  // namespace

TEST_CASE("coherence") {
  const auto s = n3_quarter_turn();
  CHECK(coherence(s, Channel::own_bath, real_factor(1.0)) == doctest::Approx((kSqrt5 + 1.0) / 4.0).epsilon(1e-15));
  CHECK(coherence(s, Channel::own_bath, real_factor(0.0)) == 0.0);
  CHECK(coherence(s, Channel::own_bath, real_factor(1.0)) == doctest::Approx(l1_coherence(s.to_matrix())));

  const auto half_twist = oat_reduced_state(OatParameters{3, pi, 0.01});
  CHECK(coherence(half_twist, Channel::shared_bath, real_factor(0.0)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("coherence is the l1 norm of the evolved state") {
  for (int n : {2, 3, 6}) {
    for (double theta : {0.4, pi / 2, 2.5}) {
      const auto s = oat_reduced_state(OatParameters{n, theta, 0.01});
      for (double a : {-0.9, -0.2, 0.0, 0.35, 1.0}) {
        for (Channel c : {Channel::own_bath, Channel::shared_bath}) {
          CHECK(coherence(s, c, real_factor(a)) ==
                doctest::Approx(l1_coherence(evolve(s, c, real_factor(a)).to_matrix())).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("coherence is monotone in the factor magnitude") {
  const auto s = oat_reduced_state(OatParameters{4, 1.1, 0.01});
  for (Channel c : {Channel::own_bath, Channel::shared_bath}) {
    double previous = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double a = i / 100.0;
      const double value = coherence(s, c, real_factor(a));
      CHECK(value >= previous);
      CHECK(coherence(s, c, real_factor(-a)) == value);
      previous = value;
    }
  }
}

TEST_CASE("generic concurrence reference states") {
  Matrix4c bell = Matrix4c::Zero();
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(concurrence_generic(bell).concurrence == doctest::Approx(1.0).epsilon(1e-14));

  const Matrix4c mixed = 0.25 * Matrix4c::Identity();
  CHECK(concurrence_generic(mixed).concurrence == 0.0);

  const auto s = n3_quarter_turn();
  const auto c = concurrence_generic(s.to_matrix(), 3);
  CHECK(c.concurrence == doctest::Approx((kSqrt5 - 1.0) / 4.0).epsilon(1e-14));
  CHECK(c.rescaled == doctest::Approx(kGolden).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) CHECK(c.lambdas[i] >= c.lambdas[i + 1]);
}

TEST_CASE("generic concurrence flags non-positive input") {
  Matrix4c bad = 0.25 * Matrix4c::Identity();
  bad(0, 0) = -1e-6;
  bad(1, 1) = 0.5 + 1e-6 - 0.25;
  CHECK_THROWS_AS(concurrence_generic(bad), NumericalError);
  // Rounding-level negativity is clamped.
  Matrix4c nearly = Matrix4c::Zero();
  nearly(0, 0) = 1.0;
  nearly(1, 1) = -1e-14;
  CHECK(concurrence_generic(nearly).concurrence == 0.0);
}

TEST_CASE("own-bath concurrence") {
  const auto s = n3_quarter_turn();
  CHECK(concurrence_channel_I(s, real_factor(1.0), 3).rescaled == doctest::Approx(initial_rescaled_concurrence(s, 3)));
  CHECK(initial_rescaled_concurrence(s, 3) == doctest::Approx(kGolden).epsilon(1e-15));
  CHECK(concurrence_channel_I(s, real_factor(0.0), 3).rescaled == 0.0);
  const auto c = concurrence_channel_I(s, real_factor(std::sqrt(0.8)), 3);
  CHECK(c.rescaled == doctest::Approx(0.8 * kGolden - 0.1).epsilon(1e-14));
  CHECK(c.rescaled == doctest::Approx(0.39443).epsilon(1e-5));
  CHECK(c.rescaled == doctest::Approx(2.0 * c.concurrence));
}

TEST_CASE("shared-bath concurrence") {
  const auto s = n3_quarter_turn();
  CHECK(concurrence_channel_II(s, real_factor(1.0), 3).rescaled == doctest::Approx(kGolden));
  CHECK(concurrence_channel_II(s, real_factor(0.0), 3).rescaled == 0.0);
  const auto c = concurrence_channel_II(s, real_factor(-0.9), 3);
  CHECK(c.rescaled == doctest::Approx(0.9 * kGolden - 0.05).epsilon(1e-14));
  CHECK(c.rescaled == doctest::Approx(0.50623).epsilon(1e-5));
  // The middle block contributes w + y and w - y = 0.
  CHECK(c.lambdas[3] == 0.0);
  const double pair = 2.0 * s.y;
  CHECK(std::any_of(c.lambdas.begin(), c.lambdas.end(), [&](double l) { return std::abs(l - pair) <= 1e-15; }));
}

TEST_CASE("closed-form concurrence matches the Wootters oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> probes(2, 8);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> factor(-1.0, 1.0);
  for (Channel channel : {Channel::own_bath, Channel::shared_bath}) {
    for (int k = 0; k < 500; ++k) {
      const int n = probes(rng);
      const auto s = oat_reduced_state(OatParameters{n, angle(rng), 0.01});
      const auto f = real_factor(factor(rng));
      const auto closed = concurrence(s, channel, f, n);
      const auto generic = concurrence_generic(evolve(s, channel, f).to_matrix(), n);
      CHECK(std::abs(closed.concurrence - generic.concurrence) <= 1e-10);
      CHECK(std::abs(closed.rescaled - generic.rescaled) <= 1e-10 * n);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(closed.lambdas[i] - generic.lambdas[i]) <= 1e-10);
      for (int i = 0; i < 3; ++i) CHECK(closed.lambdas[i] >= closed.lambdas[i + 1]);
      for (double l : closed.lambdas) CHECK(l >= 0.0);
      const double wootters = closed.lambdas[0] - closed.lambdas[1] - closed.lambdas[2] - closed.lambdas[3];
      CHECK(closed.concurrence == std::max(0.0, wootters));
      CHECK(closed.concurrence <= 1.0);
    }
  }
}

TEST_CASE("spin squeezing at t = 0") {
  const auto s = n3_quarter_turn();
  const auto r = spin_squeezing(s, Channel::own_bath, real_factor(1.0), 3);
  CHECK(r.xi2 == doctest::Approx(1.0 - kGolden).epsilon(1e-14));
  CHECK(r.xi2 == doctest::Approx(0.38197).epsilon(1e-5));
  CHECK(r.xi2_prime == doctest::Approx(r.xi2).epsilon(1e-14));
  CHECK(r.improvement == doctest::Approx(0.0).scale(1.0));
  CHECK(r.improvement_max == doctest::Approx(4.0 * (1.0 - 1.0 / kSqrt5) / 8.0).epsilon(1e-14));
  CHECK(r.improvement_max == doctest::Approx(0.27639).epsilon(1e-5));
}

TEST_CASE("closed-form squeezing matches variance minimisation") {
  for (int n = 3; n <= 10; ++n) {
    for (int k = 1; k < 16; ++k) {
      const double theta = pi * k / 16.0;
      const auto s = oat_reduced_state(OatParameters{n, theta, 0.01});
      const double closed = spin_squeezing(s, Channel::own_bath, real_factor(1.0), n).xi2;
      CHECK(closed == doctest::Approx(verification::exact_oat_squeezing(n, theta)).epsilon(1e-10));
    }
  }
  CHECK(verification::exact_oat_squeezing(3, pi / 2) == doctest::Approx(1.0 - kGolden).epsilon(1e-12));
}

TEST_CASE("fully dephased own-bath probes") {
  const auto r = spin_squeezing(n3_quarter_turn(), Channel::own_bath, real_factor(0.0), 3);
  CHECK(r.xi2 == 1.0);
  CHECK(r.xi2_prime == 1.0);
  CHECK(r.improvement == 0.0);
}

TEST_CASE("xi'^2 is one minus the rescaled concurrence") {
  for (int n : {2, 4, 7}) {
    const auto s = oat_reduced_state(OatParameters{n, 0.9, 0.01});
    for (double a : {-1.0, -0.4, 0.0, 0.6, 1.0}) {
      for (Channel c : {Channel::own_bath, Channel::shared_bath}) {
        const auto r = spin_squeezing(s, c, real_factor(a), n);
        CHECK(r.xi2_prime == 1.0 - concurrence(s, c, real_factor(a), n).rescaled);
        CHECK(r.improvement == r.xi2_prime - r.xi2);
      }
    }
  }
}

TEST_CASE("shared-bath squeezing identity") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < 12; ++k) {
      const auto s = oat_reduced_state(OatParameters{n, pi * k / 12.0, 0.01});
      for (int i = 0; i <= 200; ++i) {
        const double a = -1.0 + i / 100.0;
        const auto r = spin_squeezing(s, Channel::shared_bath, real_factor(a), n);
        const double c_r = concurrence_channel_II(s, real_factor(a), n).rescaled;
        if (std::abs(a) * std::abs(s.u) >= s.y) {
          CHECK(std::abs(r.xi2 + c_r - 1.0) <= 1e-12);
        } else {
          CHECK(c_r == 0.0);
          CHECK(r.xi2 >= 1.0);
        }
        CHECK(r.improvement_max == 0.0);
      }
    }
  }
}

TEST_CASE("own-bath improvement is non-negative for squeezed states") {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k < 12; ++k) {
      const auto s = oat_reduced_state(OatParameters{n, pi * k / 12.0, 0.01});
      const double u = std::abs(s.u);
      for (int i = 0; i <= 400; ++i) {
        const double a = -1.0 + i / 200.0;
        const auto r = spin_squeezing(s, Channel::own_bath, real_factor(a), n);
        CHECK(r.improvement == doctest::Approx(squeezing_improvement(s, a * a, n)).epsilon(1e-12).scale(1.0));
        if (u >= s.y) {
          CHECK(r.improvement >= -1e-12);
          CHECK(r.xi2 <= r.xi2_prime + 1e-12);
          CHECK(r.improvement <= r.improvement_max + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("improvement peaks at A^2 = y/|u|") {
  // N = 2 has y = 0 and a flat improvement curve.
  for (int n = 3; n <= 8; ++n) {
    for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3}) {
      const auto s = oat_reduced_state(OatParameters{n, theta, 0.01});
      const double u = std::abs(s.u);
      if (u <= s.y) continue;
      const double best = spin_squeezing(s, Channel::own_bath, real_factor(1.0), n).improvement_max;
      CHECK(squeezing_improvement(s, s.y / u, n) == doctest::Approx(best).epsilon(1e-12));
      const auto coarse = max_improvement_on_grid(s, n, 20001);
      const auto fine = max_improvement_on_grid(s, n, 20001, std::max(0.0, coarse.a - 5e-5),
                                                std::min(1.0, coarse.a + 5e-5));
      CHECK(std::abs(fine.value - best) <= 1e-6);
      INFO("n=" << n << " theta=" << theta << " a*=" << std::sqrt(s.y / u) << " grid=" << fine.a);
      CHECK(std::abs(fine.a - std::sqrt(s.y / u)) <= 1e-6);
    }
  }
}

TEST_CASE("grid search validates its range") {
  const auto s = n3_quarter_turn();
  CHECK_THROWS_AS(max_improvement_on_grid(s, 3, 1), ValidationError);
  CHECK_THROWS_AS(max_improvement_on_grid(s, 3, 10, 0.5, 0.5), ValidationError);
  CHECK_THROWS_AS(max_improvement_on_grid_serial(s, 3, 10, -2.0, 0.5), ValidationError);
}
