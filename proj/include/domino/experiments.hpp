#ifndef DOMINO_EXPERIMENTS_HPP
#define DOMINO_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "domino/dynamics.hpp"
#include "domino/hebbian.hpp"
#include "domino/model.hpp"
#include "domino/oracle.hpp"

namespace domino {

/// Runs ending within this relative band of the pooled deepest energy
/// count as having attained it; ties credit every dynamics involved.
constexpr double kDeepestTieRelTol = 1e-6;

enum class DynamicsKind : int { Random = 0, DomainRandom = 1, DomainCluster = 2 };
constexpr int kDynamicsCount = 3;

/// "RANDOM", "DM-RND", "DM-CLS".
const char* dynamics_name(DynamicsKind kind);

/// Group layout for generated matrices: either a fixed size list reused
/// for every matrix, or `group_count` sizes redrawn per matrix from
/// [size_low, size_high] and nudged to sum to N. size_high == 0 means
/// max(1, 2 * N / group_count - 1).
struct GroupScheme {
  std::vector<int> fixed_sizes;
  int group_count = 0;
  int size_low = 1;
  int size_high = 0;
};

struct ExperimentConfig {
  int total_spins = 300;        // N
  int pattern_dim = 30;         // M
  GroupScheme groups{{}, 20, 1, 0};
  double distortion = 0.0;      // b
  int random_domain_size = 15;  // k for DM-RND partitions
  int matrix_count = 20;
  int start_count = 200;
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws Error{InvalidConfig}.
  void validate() const;
  int effective_size_high() const;
};

/// One minimization run. domain_energy is NaN for plain RANDOM runs.
struct TrialRecord {
  double domain_energy = 0.0;  // D
  double final_energy = 0.0;   // E
  bool has_r = false;
  double r_share = 0.0;

  bool operator==(const TrialRecord&) const = default;
};

/// All trials of one experiment at one distortion level:
/// matrix_count matrices x 3 dynamics x start_count starts.
struct ProtocolResult {
  double distortion = 0.0;
  int matrix_count = 0;
  int start_count = 0;
  std::vector<std::vector<int>> group_sizes;  // per matrix
  std::vector<TrialRecord> records;

  const TrialRecord& at(int matrix, DynamicsKind kind, int start) const {
    return records[(static_cast<std::size_t>(matrix) * kDynamicsCount +
                    static_cast<int>(kind)) *
                       start_count +
                   start];
  }
};

/// Runs the three dynamics of the comparison protocol:
///   RANDOM   random dynamics from a random start,
///   DM-RND   two-phase with a fresh random equal-size partition, from
///            the same random start,
///   DM-CLS   two-phase with the cluster partition, from an independent
///            block-constant start.
/// Per-trial seeds are derived from the master seed by counter mixing,
/// so the result is independent of thread count and execution order.
ProtocolResult run_protocol(const ExperimentConfig& config);

struct FrequencyReport {
  double distortion = 0.0;
  int matrix_count = 0;
  int starts_per_matrix = 0;
  std::vector<double> deepest_energy;                     // per matrix
  std::vector<std::array<int, kDynamicsCount>> hits;      // per matrix
  std::array<double, kDynamicsCount> mean_frequency{};    // averaged over matrices

  bool operator==(const FrequencyReport&) const = default;
};

/// Per matrix: pools all 3 * starts minima, finds the deepest, counts
/// per-dynamics attainment within kDeepestTieRelTol; frequencies are
/// averaged over matrices.
FrequencyReport deepest_frequency_report(const ProtocolResult& result);
FrequencyReport deepest_frequency_experiment(const ExperimentConfig& config);

struct DistortionSweepReport {
  std::vector<double> b_values;
  std::vector<FrequencyReport> per_b;
};

/// deepest_frequency_experiment repeated per b, each with the same
/// master seed, so a b matching config.distortion reproduces the
/// standalone report bit for bit.
DistortionSweepReport distortion_sweep(const ExperimentConfig& config,
                                       const std::vector<double>& b_values);

struct RShareStat {
  double mean_r = 0.0;          // r averaged over starts, then over matrices
  std::int64_t defined_runs = 0;
  std::int64_t undefined_runs = 0;

  bool operator==(const RShareStat&) const = default;
};

struct RCharacteristicReport {
  std::vector<double> b_values;
  std::vector<RShareStat> dm_rnd;  // per b
  std::vector<RShareStat> dm_cls;  // per b

  bool operator==(const RCharacteristicReport&) const = default;
};

/// Mean r per b for the two domain dynamics; runs with undefined r
/// (D >= 0 or E == 0) are excluded from the mean and counted.
RCharacteristicReport r_characteristic_experiment(const ExperimentConfig& config,
                                                  const std::vector<double>& b_values);

/// Same aggregation over already-computed protocol results.
RCharacteristicReport r_characteristic_report(const std::vector<double>& b_values,
                                              const std::vector<ProtocolResult>& results);

struct Table1Row {
  double distortion = 0.0;
  double mean_coupling = 0.0;  // measured same-group average
  double expected = 0.0;       // (1 - 2b)^2
};

struct Table1Report {
  int pattern_dim = 0;
  std::vector<int> group_sizes;
  std::vector<Table1Row> rows;
};

/// Generates one pattern matrix per b and measures the same-group
/// coupling mean against (1 - 2b)^2.
Table1Report table1_experiment(const std::vector<int>& group_sizes, int pattern_dim,
                               const std::vector<double>& b_values, std::uint64_t seed);

}  // namespace domino

#endif
