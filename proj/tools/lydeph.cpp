// Command-line front end: simulate, zeros, verify, fit-cmax.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lydeph/error.hpp"
#include "lydeph/experiments.hpp"
#include "lydeph/series_io.hpp"
#include "lydeph/verification/acceptance.hpp"

namespace {

struct SimulateArgs {
  int nb = 0;
  double beta = 0.0;
  double lambda = 1.0;
  int probes = 3;
  double theta = 0.0;
  double eta = 0.01;
  std::string channel = "I";
  double t_max = 0.0;
  int steps = 0;
  std::string out;
};

struct ZerosArgs {
  int nb = 0;
  double beta = 0.0;
  double lambda = 1.0;
  std::string out = "-";
};

struct FitArgs {
  double theta = 0.0;
  double beta = 10.0;
  int n_min = 3;
  int n_max = 8;
  int nb = 100;
  double lambda = 1.0;
  double eta = 0.01;
};

int simulate(const SimulateArgs& a) {
  lydeph::Scenario s;
  s.ring = lydeph::IsingRing{a.nb, a.lambda, a.beta, 0.0};
  s.oat = lydeph::OatParameters{a.probes, a.theta, a.eta};
  s.channel = a.channel == "I" ? lydeph::Channel::own_bath : lydeph::Channel::shared_bath;
  s.t_max = a.t_max;
  s.steps = a.steps > 0 ? a.steps : lydeph::adaptive_steps(s.ring, s.channel, a.eta, a.t_max);
  s.output = a.out;
  const lydeph::ObservableSeries series = lydeph::run_scenario(s);
  lydeph::emit_csv(series, s.output);
  std::cerr << "wrote " << series.size() << " rows to " << s.output.string() << '\n';
  return 0;
}

int zeros(const ZerosArgs& a) {
  const lydeph::PartitionPolynomial poly = lydeph::partition_coefficients(lydeph::IsingRing{a.nb, a.lambda, a.beta, 0.0});
  const lydeph::LeeYangZeroSet set = lydeph::lee_yang_zeros(poly);
  if (a.out == "-") {
    lydeph::write_zeros_csv(set, poly, std::cout);
    std::cout.flush();
    if (!std::cout) throw lydeph::IoError("write to stdout failed");
    return 0;
  }
  std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
  if (!out) throw lydeph::IoError("cannot open " + a.out + " for writing");
  lydeph::write_zeros_csv(set, poly, out);
  out.flush();
  if (!out) throw lydeph::IoError("write failed for " + a.out);
  return 0;
}

int verify(const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int id = 1; id <= lydeph::verification::kCriterionCount; ++id) ids.push_back(id);
  }
  bool all = true;
  for (int id : ids) {
    const auto result = lydeph::verification::run_criterion(id);
    std::cout << lydeph::verification::format_result(result) << std::endl;
    all = all && result.passed;
  }
  return all ? 0 : static_cast<int>(lydeph::ErrorKind::numerical);
}

int fit_cmax(const FitArgs& a) {
  if (a.n_min > a.n_max) throw lydeph::ValidationError("--n-min must not exceed --n-max");
  std::vector<int> n_values;
  for (int n = a.n_min; n <= a.n_max; ++n) n_values.push_back(n);
  const lydeph::FitResult fit =
      lydeph::fit_cmax_scaling(n_values, a.theta, lydeph::IsingRing{a.nb, a.lambda, a.beta, 0.0}, a.eta);
  std::cout << "alpha," << lydeph::format_number(fit.alpha) << '\n'
            << "intercept," << lydeph::format_number(fit.intercept) << '\n'
            << "residual," << lydeph::format_number(fit.residual) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lee-Yang zeros and probe dephasing in an Ising-ring bath"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Write the observable time series of one scenario as CSV");
  simulate_cmd->add_option("--nb", sim.nb, "Bath spins")->required();
  simulate_cmd->add_option("--beta", sim.beta, "Inverse temperature")->required();
  simulate_cmd->add_option("--lambda", sim.lambda, "Bath coupling")->capture_default_str();
  simulate_cmd->add_option("--probes", sim.probes, "Probe spins N")->required();
  simulate_cmd->add_option("--theta", sim.theta, "Twist angle (radians)")->required();
  simulate_cmd->add_option("--eta", sim.eta, "Probe-bath coupling")->capture_default_str();
  simulate_cmd->add_option("--channel", sim.channel, "I (own baths) or II (shared bath)")
      ->required()
      ->check(CLI::IsMember({"I", "II"}));
  simulate_cmd->add_option("--t-max", sim.t_max, "End time")->required();
  simulate_cmd->add_option("--steps", sim.steps, "Grid points; 0 picks 40 samples between zero times")
      ->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "Output CSV path")->required();

  ZerosArgs zer;
  auto* zeros_cmd = app.add_subcommand("zeros", "Write the Lee-Yang zero phases as CSV");
  zeros_cmd->add_option("--nb", zer.nb, "Bath spins")->required();
  zeros_cmd->add_option("--beta", zer.beta, "Inverse temperature")->required();
  zeros_cmd->add_option("--lambda", zer.lambda, "Bath coupling")->capture_default_str();
  zeros_cmd->add_option("--out", zer.out, "Output CSV path, - for stdout")->capture_default_str();

  std::vector<int> only;
  auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance and invariant suite");
  verify_cmd->add_option("--criterion", only, "Run only these criteria (1-14)")
      ->check(CLI::Range(1, lydeph::verification::kCriterionCount));

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit-cmax", "Fit ln C_max against N - 2");
  fit_cmd->add_option("--theta", fit.theta, "Twist angle (radians)")->required();
  fit_cmd->add_option("--beta", fit.beta, "Inverse temperature (>= 10)")->capture_default_str();
  fit_cmd->add_option("--n-min", fit.n_min, "Smallest probe count")->capture_default_str();
  fit_cmd->add_option("--n-max", fit.n_max, "Largest probe count")->capture_default_str();
  fit_cmd->add_option("--nb", fit.nb, "Bath spins")->capture_default_str();
  fit_cmd->add_option("--lambda", fit.lambda, "Bath coupling")->capture_default_str();
  fit_cmd->add_option("--eta", fit.eta, "Probe-bath coupling")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(lydeph::ErrorKind::validation);
  }

  try {
    if (*simulate_cmd) return simulate(sim);
    if (*zeros_cmd) return zeros(zer);
    if (*verify_cmd) return verify(only);
    if (*fit_cmd) return fit_cmax(fit);
  } catch (const lydeph::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return static_cast<int>(lydeph::ErrorKind::numerical);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(lydeph::ErrorKind::numerical);
  }
  return 0;
}
