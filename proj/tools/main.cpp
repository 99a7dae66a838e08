#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "domino/dynamics.hpp"
#include "domino/experiments.hpp"
#include "domino/hebbian.hpp"
#include "domino/io.hpp"
#include "domino/model.hpp"
#include "domino/oracle.hpp"
#include "domino/rng.hpp"

namespace fs = std::filesystem;
using namespace domino;

namespace {

[[noreturn]] void usage_error(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

struct GenArgs {
  bool hebbian = false;
  bool random_symmetric = false;
  std::vector<int> sizes;
  int n_groups = 0;
  int n = 0;
  int m = 0;
  double b = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string pattern_out;
  std::string partition_out;
  std::string block_start_out;
};

int run_gen(const GenArgs& args) {
  if (args.hebbian == args.random_symmetric) {
    usage_error("choose exactly one of --hebbian and --random-symmetric");
  }

  if (args.random_symmetric) {
    for (const std::string& extra : {args.pattern_out, args.partition_out, args.block_start_out}) {
      if (!extra.empty()) {
        usage_error("--pattern-out/--partition-out/--block-start-out apply only to --hebbian");
      }
    }
    if (args.n < 2) usage_error("--random-symmetric needs --n >= 2");
    const ConnectionMatrix J = random_symmetric_matrix(args.n, args.seed);
    io::write_matrix(args.out, J);
    std::cout << "wrote " << args.n << "x" << args.n << " random symmetric matrix to " << args.out
              << "\n";
    return 0;
  }

  if (args.sizes.empty()) usage_error("--hebbian needs --sizes k1,k2,...");
  if (args.m < 1) usage_error("--hebbian needs --m >= 1");
  if (args.n_groups > 0 && args.n_groups != static_cast<int>(args.sizes.size())) {
    usage_error("--n-groups " + std::to_string(args.n_groups) + " does not match " +
                std::to_string(args.sizes.size()) + " entries of --sizes");
  }
  GroupSpec spec;
  spec.sizes = args.sizes;
  spec.distortion = args.b;
  spec.validate();
  if (args.n > 0 && args.n != spec.total_spins()) {
    usage_error("--n " + std::to_string(args.n) + " does not match the --sizes total " +
                std::to_string(spec.total_spins()));
  }

  const PatternMatrix patterns = generate_pattern_matrix(args.m, spec, args.seed);
  const ConnectionMatrix J = hebbian_matrix(patterns);
  io::write_matrix(args.out, J);
  std::cout << "wrote " << J.size() << "x" << J.size() << " Hebbian matrix (M = " << args.m
            << ", b = " << io::format_double(args.b) << ") to " << args.out << "\n";
  if (!args.pattern_out.empty()) {
    io::write_pattern_matrix(args.pattern_out, patterns);
    std::cout << "wrote patterns to " << args.pattern_out << "\n";
  }
  if (!args.partition_out.empty()) {
    io::write_partition(args.partition_out, cluster_partition(spec));
    std::cout << "wrote cluster partition to " << args.partition_out << "\n";
  }
  if (!args.block_start_out.empty()) {
    io::write_configuration(args.block_start_out, random_block_start(spec, mix_seed(args.seed, 1)));
    std::cout << "wrote block-constant start to " << args.block_start_out << "\n";
  }
  return 0;
}

struct MinimizeArgs {
  std::string matrix;
  std::string dynamics;
  std::string partition;
  bool defrost = false;
  std::string start;
  bool random_start = false;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int max_sweeps = 0;
  std::string trace;
  std::string state_out;
};

void write_trace(const std::string& path, const std::vector<double>& domain_part,
                 const std::vector<double>& random_part) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  for (double e : domain_part) out << io::format_double(e) << "\n";
  for (double e : random_part) out << io::format_double(e) << "\n";
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to " + path + " failed");
}

int run_minimize(const MinimizeArgs& args) {
  const ConnectionMatrix J = io::read_matrix(args.matrix);

  if (args.start.empty() == !args.random_start) {
    usage_error("choose exactly one of --start <file> and --random-start");
  }
  const bool stochastic = args.dynamics != "synchronous" || args.random_start;
  if (stochastic && !args.seed_given) {
    usage_error("--seed is required for stochastic runs (no silent entropy)");
  }

  const SpinConfiguration start =
      args.random_start ? random_configuration(J.size(), mix_seed(args.seed, 0))
                        : io::read_configuration(args.start);
  std::cout << "N = " << J.size() << "\n";
  std::cout << "initial energy = " << io::format_double(energy(J, start)) << "\n";

  RunOptions options;
  options.max_sweeps = args.max_sweeps;
  options.record_energy_trace = !args.trace.empty();

  if (args.dynamics == "synchronous") {
    if (args.defrost || !args.partition.empty()) {
      usage_error("--partition/--defrost do not apply to synchronous dynamics");
    }
    const SynchronousOutcome outcome = run_synchronous_dynamics(J, start, args.max_sweeps);
    std::cout << "outcome: "
              << (outcome.kind == SynchronousKind::FixedPoint ? "FixedPoint" : "TwoCycle") << "\n";
    std::cout << "sweeps = " << outcome.sweeps << "\n";
    for (std::size_t i = 0; i < outcome.states.size(); ++i) {
      std::cout << "state " << i + 1 << ": energy "
                << io::format_double(energy(J, outcome.states[i])) << ", "
                << io::configuration_to_string(outcome.states[i]) << "\n";
    }
    if (!args.state_out.empty()) io::write_configuration(args.state_out, outcome.states[0]);
    if (!args.trace.empty()) usage_error("--trace does not apply to synchronous dynamics");
    return 0;
  }

  if (args.dynamics == "random") {
    if (args.defrost || !args.partition.empty()) {
      usage_error("--partition/--defrost apply only to --dynamics domain");
    }
    const auto [state, traj] = run_random_dynamics(J, start, mix_seed(args.seed, 1), options);
    std::cout << "final energy E = " << io::format_double(traj.final_energy) << "\n";
    std::cout << "flips = " << traj.steps << ", sweeps = " << traj.sweeps << "\n";
    std::cout << "final configuration: " << io::configuration_to_string(state) << "\n";
    if (!args.state_out.empty()) io::write_configuration(args.state_out, state);
    if (!args.trace.empty()) write_trace(args.trace, {}, traj.energy_trace);
    return 0;
  }

  // domain dynamics, optionally defrosting into random dynamics
  if (args.partition.empty()) usage_error("--dynamics domain needs --partition <file>");
  const DomainPartition p = io::read_partition(args.partition);

  if (!args.defrost) {
    const auto [state, traj] = run_domain_dynamics(J, start, p, mix_seed(args.seed, 1), options);
    std::cout << "domain minimum energy D = " << io::format_double(traj.final_energy) << "\n";
    std::cout << "domain flips = " << traj.steps << ", sweeps = " << traj.sweeps << "\n";
    std::cout << "final configuration: " << io::configuration_to_string(state) << "\n";
    if (!args.state_out.empty()) io::write_configuration(args.state_out, state);
    if (!args.trace.empty()) write_trace(args.trace, traj.energy_trace, {});
    return 0;
  }

  const RunOutcome outcome = minimize_two_phase(J, start, p, mix_seed(args.seed, 1), options);
  std::cout << "domain minimum energy D = " << io::format_double(outcome.domain_minimum_energy)
            << "\n";
  std::cout << "final energy E = " << io::format_double(outcome.final_energy) << "\n";
  std::cout << "domain flips = " << outcome.domain_trajectory.steps
            << ", defrost flips = " << outcome.random_trajectory.steps << "\n";
  if (outcome.shares_undefined) {
    std::cout << "d, r undefined (D >= 0 or E == 0)\n";
  } else {
    std::cout << "d = " << io::format_double(*outcome.d_share) << "\n";
    std::cout << "r = " << io::format_double(*outcome.r_share) << "\n";
  }
  std::cout << "final configuration: " << io::configuration_to_string(outcome.final_state) << "\n";
  if (!args.state_out.empty()) io::write_configuration(args.state_out, outcome.final_state);
  if (!args.trace.empty()) {
    write_trace(args.trace, outcome.domain_trajectory.energy_trace,
                outcome.random_trajectory.energy_trace);
  }
  return 0;
}

struct ExperimentArgs {
  std::string protocol;
  int n = 300;
  int m = 0;  // 0: protocol default (30, or 600 for table1)
  int n_groups = 20;
  std::vector<int> sizes;
  int size_low = 1;
  int size_high = 0;
  std::vector<double> b;
  int k_random = 15;
  int matrices = 20;
  int starts = 200;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out_dir = ".";
};

ExperimentConfig experiment_config(const ExperimentArgs& args) {
  ExperimentConfig config;
  config.total_spins = args.n;
  config.pattern_dim = args.m > 0 ? args.m : 30;
  if (!args.sizes.empty()) {
    config.groups.fixed_sizes = args.sizes;
    config.groups.group_count = static_cast<int>(args.sizes.size());
  } else {
    config.groups.group_count = args.n_groups;
    config.groups.size_low = args.size_low;
    config.groups.size_high = args.size_high;
  }
  config.random_domain_size = args.k_random;
  config.matrix_count = args.matrices;
  config.start_count = args.starts;
  config.seed = args.seed;
  config.threads = args.threads;
  return config;
}

int run_experiment(const ExperimentArgs& args) {
  fs::create_directories(args.out_dir);
  const fs::path out_dir = args.out_dir;

  if (args.protocol == "table1") {
    const std::vector<int> sizes = args.sizes.empty() ? std::vector<int>{10, 15, 20, 25}
                                                      : args.sizes;
    const std::vector<double> b_values =
        args.b.empty() ? std::vector<double>{0.02, 0.05, 0.1, 0.2} : args.b;
    const int m = args.m > 0 ? args.m : 600;
    const Table1Report report = table1_experiment(sizes, m, b_values, args.seed);
    io::write_table1_csv(out_dir / "table1.csv", report);
    for (const Table1Row& row : report.rows) {
      std::cout << "b = " << io::format_double(row.distortion) << ": mean same-group coupling "
                << io::format_double(row.mean_coupling) << " (expected "
                << io::format_double(row.expected) << ")\n";
    }
    std::cout << "wrote " << (out_dir / "table1.csv").string() << "\n";
    return 0;
  }

  ExperimentConfig config = experiment_config(args);

  if (args.protocol == "fig1") {
    if (args.b.size() > 1) usage_error("fig1 runs at a single b; pass at most one value");
    config.distortion = args.b.empty() ? 0.0 : args.b.front();
    const FrequencyReport report = deepest_frequency_experiment(config);
    io::write_fig1_csv(out_dir / "fig1.csv", report);
    for (int m = 0; m < report.matrix_count; ++m) {
      std::cout << "matrix " << m + 1 << ": deepest "
                << io::format_double(report.deepest_energy[m]);
      for (int d = 0; d < kDynamicsCount; ++d) {
        std::cout << ", " << dynamics_name(static_cast<DynamicsKind>(d)) << " "
                  << report.hits[m][d] << "/" << report.starts_per_matrix;
      }
      std::cout << "\n";
    }
    std::cout << "mean deepest-minimum frequency:";
    for (int d = 0; d < kDynamicsCount; ++d) {
      std::cout << " " << dynamics_name(static_cast<DynamicsKind>(d)) << " "
                << io::format_double(report.mean_frequency[d]);
    }
    std::cout << "\nwrote " << (out_dir / "fig1.csv").string() << "\n";
    return 0;
  }

  const std::vector<double> b_values =
      args.b.empty() ? std::vector<double>{0.0, 0.02, 0.05, 0.1, 0.2} : args.b;

  if (args.protocol == "fig2") {
    const DistortionSweepReport report = distortion_sweep(config, b_values);
    io::write_fig2_csv(out_dir / "fig2.csv", report);
    for (std::size_t i = 0; i < report.per_b.size(); ++i) {
      std::cout << "b = " << io::format_double(report.b_values[i]) << ": mean frequency";
      for (int d = 0; d < kDynamicsCount; ++d) {
        std::cout << " " << dynamics_name(static_cast<DynamicsKind>(d)) << " "
                  << io::format_double(report.per_b[i].mean_frequency[d]);
      }
      std::cout << "\n";
    }
    std::cout << "wrote " << (out_dir / "fig2.csv").string() << "\n";
    return 0;
  }

  if (args.protocol == "fig3") {
    const RCharacteristicReport report = r_characteristic_experiment(config, b_values);
    io::write_fig3_csv(out_dir / "fig3.csv", report);
    for (std::size_t i = 0; i < report.b_values.size(); ++i) {
      std::cout << "b = " << io::format_double(report.b_values[i]) << ": mean r DM-RND "
                << io::format_double(report.dm_rnd[i].mean_r) << ", DM-CLS "
                << io::format_double(report.dm_cls[i].mean_r) << "\n";
    }
    std::cout << "wrote " << (out_dir / "fig3.csv").string() << "\n";
    return 0;
  }

  usage_error("unknown protocol '" + args.protocol + "'");
}

struct OracleArgs {
  std::string matrix;
  std::string partition;
  std::string reference;
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  const ConnectionMatrix J = io::read_matrix(args.matrix);
  OracleReport combined;

  const OracleReport spins = brute_force_minima(J);
  combined.local_minima = spins.local_minima;
  combined.global_minimum_energy = spins.global_minimum_energy;
  std::cout << "local minima (up to global flip): " << spins.local_minima.size() << "\n";
  std::cout << "global minimum energy: " << io::format_double(spins.global_minimum_energy) << "\n";
  if (!spins.local_minima.empty()) {
    std::cout << "deepest minimum: " << io::configuration_to_string(spins.local_minima[0].state)
              << "\n";
  }

  if (!args.partition.empty()) {
    const DomainPartition p = io::read_partition(args.partition);
    const OracleReport domains =
        args.reference.empty()
            ? brute_force_domain_minima(J, p)
            : brute_force_domain_minima(J, p, io::read_configuration(args.reference));
    combined.domain_local_minima = domains.domain_local_minima;
    std::cout << "domain local minima (up to global flip): " << domains.domain_local_minima.size()
              << "\n";
  } else if (!args.reference.empty()) {
    usage_error("--reference applies only together with --partition");
  }

  if (!args.out.empty()) {
    io::write_oracle_csv(args.out, combined);
    std::cout << "wrote " << args.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimization toolkit for quadratic functionals of binary spins"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate a connection matrix");
  gen->add_flag("--hebbian", gen_args.hebbian, "block Hebbian matrix from distorted pattern groups");
  gen->add_flag("--random-symmetric", gen_args.random_symmetric,
                "symmetric matrix with Gaussian couplings");
  gen->add_option("--sizes", gen_args.sizes, "group sizes k1,k2,...")->delimiter(',');
  gen->add_option("--n-groups", gen_args.n_groups, "group count (checked against --sizes)");
  gen->add_option("--n", gen_args.n, "total spins");
  gen->add_option("--m", gen_args.m, "pattern dimension M");
  gen->add_option("--b", gen_args.b, "distortion level in [0, 0.5)");
  gen->add_option("--seed", gen_args.seed, "master seed")->required();
  gen->add_option("--out", gen_args.out, "matrix output path")->required();
  gen->add_option("--pattern-out", gen_args.pattern_out, "also write the pattern matrix");
  gen->add_option("--partition-out", gen_args.partition_out, "also write the cluster partition");
  gen->add_option("--block-start-out", gen_args.block_start_out,
                  "also write a random block-constant configuration");

  MinimizeArgs min_args;
  CLI::App* minimize = app.add_subcommand("minimize", "run one descent on a matrix file");
  minimize->add_option("--matrix", min_args.matrix, "matrix file")->required();
  minimize->add_option("--dynamics", min_args.dynamics, "random | synchronous | domain")
      ->required()
      ->check(CLI::IsMember({"random", "synchronous", "domain"}));
  minimize->add_option("--partition", min_args.partition, "partition file (domain dynamics)");
  minimize->add_flag("--defrost", min_args.defrost,
                     "after domain convergence, continue with random dynamics");
  minimize->add_option("--start", min_args.start, "start configuration file");
  minimize->add_flag("--random-start", min_args.random_start, "draw the start from the seed");
  CLI::Option* seed_opt = minimize->add_option("--seed", min_args.seed, "master seed");
  minimize->add_option("--max-sweeps", min_args.max_sweeps, "sweep bound (0: default)");
  minimize->add_option("--trace", min_args.trace, "write energies after each accepted flip");
  minimize->add_option("--state-out", min_args.state_out, "write the final configuration");

  ExperimentArgs exp_args;
  CLI::App* experiment = app.add_subcommand("experiment", "run a comparison protocol");
  experiment->add_option("protocol", exp_args.protocol, "fig1 | fig2 | fig3 | table1")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "table1"}));
  experiment->add_option("--n", exp_args.n, "total spins N");
  experiment->add_option("--m", exp_args.m, "pattern dimension M (default 30; table1: 600)");
  experiment->add_option("--n-groups", exp_args.n_groups, "groups per matrix");
  experiment->add_option("--sizes", exp_args.sizes, "fixed group sizes k1,k2,...")->delimiter(',');
  experiment->add_option("--size-low", exp_args.size_low, "smallest random group size");
  experiment->add_option("--size-high", exp_args.size_high,
                         "largest random group size (0: 2N/n - 1)");
  experiment->add_option("--b", exp_args.b, "distortion level(s)")->delimiter(',');
  experiment->add_option("--k-random", exp_args.k_random, "domain size for DM-RND partitions");
  experiment->add_option("--matrices", exp_args.matrices, "matrices per protocol");
  experiment->add_option("--starts", exp_args.starts, "starts per matrix and dynamics");
  experiment->add_option("--seed", exp_args.seed, "master seed")->required();
  experiment->add_option("--threads", exp_args.threads, "worker threads (results unaffected)");
  experiment->add_option("--out-dir", exp_args.out_dir, "directory for CSV output");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustively enumerate minima (N <= 24)");
  oracle->add_option("--matrix", oracle_args.matrix, "matrix file")->required();
  oracle->add_option("--partition", oracle_args.partition, "also enumerate domain minima");
  oracle->add_option("--reference", oracle_args.reference,
                     "reference configuration for domain enumeration (default: all +1)");
  oracle->add_option("--out", oracle_args.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    min_args.seed_given = seed_opt->count() > 0;
    if (gen->parsed()) return run_gen(gen_args);
    if (minimize->parsed()) return run_minimize(min_args);
    if (experiment->parsed()) return run_experiment(exp_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
