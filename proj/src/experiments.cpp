#include "domino/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

namespace domino {

namespace {

// Salts for the seed fan-out. Every random decision of a protocol run
// is keyed by (master, salt, matrix, [dynamics,] start).
constexpr std::uint64_t kSaltMatrixSizes = 0x11;
constexpr std::uint64_t kSaltPatterns = 0x12;
constexpr std::uint64_t kSaltSharedStart = 0x21;
constexpr std::uint64_t kSaltBlockStart = 0x22;
constexpr std::uint64_t kSaltPartition = 0x23;
constexpr std::uint64_t kSaltVisit = 0x31;

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t salt, std::uint64_t matrix,
                         std::uint64_t extra) {
  return mix_seed(mix_seed(mix_seed(master, salt), matrix), extra);
}

void run_matrix_trials(const ExperimentConfig& config, int matrix, std::vector<int>& sizes_out,
                       std::vector<TrialRecord>& records) {
  const std::uint64_t master = config.seed;
  const int n = config.total_spins;

  std::vector<int> sizes = config.groups.fixed_sizes;
  if (sizes.empty()) {
    Rng size_rng(trial_seed(master, kSaltMatrixSizes, matrix, 0));
    sizes = random_group_sizes(n, config.groups.group_count, config.groups.size_low,
                               config.effective_size_high(), size_rng);
  }
  sizes_out = sizes;

  const GroupSpec spec{sizes, config.distortion};
  const PatternMatrix patterns =
      generate_pattern_matrix(config.pattern_dim, spec, trial_seed(master, kSaltPatterns, matrix, 0));
  const ConnectionMatrix J = hebbian_matrix(patterns);
  const DomainPartition cluster = cluster_partition(spec);

  const auto slot = [&](DynamicsKind kind, int start) -> TrialRecord& {
    return records[(static_cast<std::size_t>(matrix) * kDynamicsCount +
                    static_cast<int>(kind)) *
                       config.start_count +
                   start];
  };

  for (int start = 0; start < config.start_count; ++start) {
    const SpinConfiguration shared_start =
        random_configuration(n, trial_seed(master, kSaltSharedStart, matrix, start));

    {
      auto [state, traj] = run_random_dynamics(
          J, shared_start,
          trial_seed(master, kSaltVisit, matrix,
                     static_cast<std::uint64_t>(start) * kDynamicsCount +
                         static_cast<int>(DynamicsKind::Random)));
      slot(DynamicsKind::Random, start) = {std::numeric_limits<double>::quiet_NaN(),
                                           traj.final_energy, false, 0.0};
    }
    {
      const DomainPartition random_domains = random_partition(
          n, config.random_domain_size, trial_seed(master, kSaltPartition, matrix, start));
      const RunOutcome outcome = minimize_two_phase(
          J, shared_start, random_domains,
          trial_seed(master, kSaltVisit, matrix,
                     static_cast<std::uint64_t>(start) * kDynamicsCount +
                         static_cast<int>(DynamicsKind::DomainRandom)));
      slot(DynamicsKind::DomainRandom, start) = {outcome.domain_minimum_energy,
                                                 outcome.final_energy, outcome.r_share.has_value(),
                                                 outcome.r_share.value_or(0.0)};
    }
    {
      const SpinConfiguration block_start =
          random_block_start(spec, trial_seed(master, kSaltBlockStart, matrix, start));
      const RunOutcome outcome = minimize_two_phase(
          J, block_start, cluster,
          trial_seed(master, kSaltVisit, matrix,
                     static_cast<std::uint64_t>(start) * kDynamicsCount +
                         static_cast<int>(DynamicsKind::DomainCluster)));
      slot(DynamicsKind::DomainCluster, start) = {outcome.domain_minimum_energy,
                                                  outcome.final_energy,
                                                  outcome.r_share.has_value(),
                                                  outcome.r_share.value_or(0.0)};
    }
  }
}

}  // namespace

const char* dynamics_name(DynamicsKind kind) {
  switch (kind) {
    case DynamicsKind::Random: return "RANDOM";
    case DynamicsKind::DomainRandom: return "DM-RND";
    case DynamicsKind::DomainCluster: return "DM-CLS";
  }
  return "?";
}

int ExperimentConfig::effective_size_high() const {
  if (groups.size_high > 0) return groups.size_high;
  const int avg = total_spins / (groups.group_count > 0 ? groups.group_count : 1);
  return std::max(1, 2 * avg - 1);
}

void ExperimentConfig::validate() const {
  if (!groups.fixed_sizes.empty()) {
    GroupSpec spec{groups.fixed_sizes, distortion};
    spec.validate();
    if (spec.total_spins() != total_spins) {
      throw Error(ErrorCode::InvalidConfig,
                  "fixed group sizes sum to " + std::to_string(spec.total_spins()) +
                      " but N = " + std::to_string(total_spins));
    }
  } else {
    if (groups.group_count < 1) {
      throw Error(ErrorCode::InvalidConfig, "need at least one group");
    }
    if (!(distortion >= 0.0 && distortion < 0.5)) {
      throw Error(ErrorCode::InvalidConfig,
                  "distortion b = " + std::to_string(distortion) + " outside [0, 0.5)");
    }
  }
  if (total_spins < 2 || pattern_dim < 1) {
    throw Error(ErrorCode::InvalidConfig, "need N >= 2 and M >= 1");
  }
  if (matrix_count < 1 || start_count < 1) {
    throw Error(ErrorCode::InvalidConfig, "need at least one matrix and one start");
  }
  if (random_domain_size < 1 || total_spins % random_domain_size != 0) {
    throw Error(ErrorCode::InvalidConfig,
                "random domain size " + std::to_string(random_domain_size) +
                    " must be positive and divide N = " + std::to_string(total_spins));
  }
  if (threads < 1) {
    throw Error(ErrorCode::InvalidConfig, "thread count must be >= 1");
  }
}

ProtocolResult run_protocol(const ExperimentConfig& config) {
  config.validate();
  ProtocolResult result;
  result.distortion = config.distortion;
  result.matrix_count = config.matrix_count;
  result.start_count = config.start_count;
  result.group_sizes.resize(static_cast<std::size_t>(config.matrix_count));
  result.records.resize(static_cast<std::size_t>(config.matrix_count) * kDynamicsCount *
                        config.start_count);

  const int workers = std::min(config.threads, config.matrix_count);
  if (workers <= 1) {
    for (int m = 0; m < config.matrix_count; ++m) {
      run_matrix_trials(config, m, result.group_sizes[m], result.records);
    }
    return result;
  }

  // Matrices are independent; records land in preassigned slots, so the
  // outcome does not depend on scheduling.
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int m = next.fetch_add(1);
        if (m >= config.matrix_count) return;
        run_matrix_trials(config, m, result.group_sizes[m], result.records);
      }
    });
  }
  for (auto& t : pool) t.join();
  return result;
}

FrequencyReport deepest_frequency_report(const ProtocolResult& result) {
  FrequencyReport report;
  report.distortion = result.distortion;
  report.matrix_count = result.matrix_count;
  report.starts_per_matrix = result.start_count;
  report.deepest_energy.resize(static_cast<std::size_t>(result.matrix_count));
  report.hits.resize(static_cast<std::size_t>(result.matrix_count));

  std::array<double, kDynamicsCount> frequency_sum{};
  for (int m = 0; m < result.matrix_count; ++m) {
    double deepest = std::numeric_limits<double>::infinity();
    for (int d = 0; d < kDynamicsCount; ++d) {
      for (int s = 0; s < result.start_count; ++s) {
        deepest = std::min(deepest, result.at(m, static_cast<DynamicsKind>(d), s).final_energy);
      }
    }
    report.deepest_energy[m] = deepest;
    const double tolerance = kDeepestTieRelTol * std::fabs(deepest);
    for (int d = 0; d < kDynamicsCount; ++d) {
      int hits = 0;
      for (int s = 0; s < result.start_count; ++s) {
        if (result.at(m, static_cast<DynamicsKind>(d), s).final_energy <= deepest + tolerance) {
          ++hits;
        }
      }
      report.hits[m][d] = hits;
      frequency_sum[d] += static_cast<double>(hits) / result.start_count;
    }
  }
  for (int d = 0; d < kDynamicsCount; ++d) {
    report.mean_frequency[d] = frequency_sum[d] / result.matrix_count;
  }
  return report;
}

FrequencyReport deepest_frequency_experiment(const ExperimentConfig& config) {
  return deepest_frequency_report(run_protocol(config));
}

DistortionSweepReport distortion_sweep(const ExperimentConfig& config,
                                       const std::vector<double>& b_values) {
  DistortionSweepReport report;
  report.b_values = b_values;
  for (double b : b_values) {
    ExperimentConfig per_b = config;
    per_b.distortion = b;
    report.per_b.push_back(deepest_frequency_experiment(per_b));
  }
  return report;
}

RCharacteristicReport r_characteristic_report(const std::vector<double>& b_values,
                                              const std::vector<ProtocolResult>& results) {
  RCharacteristicReport report;
  report.b_values = b_values;
  for (const ProtocolResult& result : results) {
    for (DynamicsKind kind : {DynamicsKind::DomainRandom, DynamicsKind::DomainCluster}) {
      RShareStat stat;
      double matrix_mean_sum = 0.0;
      int matrices_with_data = 0;
      for (int m = 0; m < result.matrix_count; ++m) {
        double r_sum = 0.0;
        int defined = 0;
        for (int s = 0; s < result.start_count; ++s) {
          const TrialRecord& rec = result.at(m, kind, s);
          if (rec.has_r) {
            r_sum += rec.r_share;
            ++defined;
          } else {
            ++stat.undefined_runs;
          }
        }
        stat.defined_runs += defined;
        if (defined > 0) {
          matrix_mean_sum += r_sum / defined;
          ++matrices_with_data;
        }
      }
      stat.mean_r = matrices_with_data > 0 ? matrix_mean_sum / matrices_with_data : 0.0;
      if (kind == DynamicsKind::DomainRandom) {
        report.dm_rnd.push_back(stat);
      } else {
        report.dm_cls.push_back(stat);
      }
    }
  }
  return report;
}

RCharacteristicReport r_characteristic_experiment(const ExperimentConfig& config,
                                                  const std::vector<double>& b_values) {
  std::vector<ProtocolResult> results;
  results.reserve(b_values.size());
  for (double b : b_values) {
    ExperimentConfig per_b = config;
    per_b.distortion = b;
    results.push_back(run_protocol(per_b));
  }
  return r_characteristic_report(b_values, results);
}

Table1Report table1_experiment(const std::vector<int>& group_sizes, int pattern_dim,
                               const std::vector<double>& b_values, std::uint64_t seed) {
  Table1Report report;
  report.pattern_dim = pattern_dim;
  report.group_sizes = group_sizes;
  for (std::size_t i = 0; i < b_values.size(); ++i) {
    const double b = b_values[i];
    const GroupSpec spec{group_sizes, b};
    const PatternMatrix patterns =
        generate_pattern_matrix(pattern_dim, spec, mix_seed(seed, i));
    const ConnectionMatrix J = hebbian_matrix(patterns);
    const double expected = (1.0 - 2.0 * b) * (1.0 - 2.0 * b);
    report.rows.push_back({b, mean_intragroup_coupling(J, spec), expected});
  }
  return report;
}

}  // namespace domino
