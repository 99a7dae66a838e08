#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "domino/experiments.hpp"

using namespace domino;

namespace {

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

/// Bitwise record comparison: the determinism contract is bit identity,
/// and RANDOM rows carry NaN domain energies that IEEE == would reject.
bool same_records(const std::vector<TrialRecord>& a, const std::vector<TrialRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_bits(a[i].domain_energy, b[i].domain_energy)) return false;
    if (!same_bits(a[i].final_energy, b[i].final_energy)) return false;
    if (a[i].has_r != b[i].has_r) return false;
    if (!same_bits(a[i].r_share, b[i].r_share)) return false;
  }
  return true;
}

/// Small but non-trivial: 3 matrices x 3 dynamics x 8 starts at N = 36.
ExperimentConfig small_config() {
  ExperimentConfig config;
  config.total_spins = 36;
  config.pattern_dim = 12;
  config.groups.fixed_sizes = {};
  config.groups.group_count = 6;
  config.groups.size_low = 1;
  config.groups.size_high = 11;
  config.distortion = 0.0;
  config.random_domain_size = 6;
  config.matrix_count = 3;
  config.start_count = 8;
  config.seed = 4242;
  config.threads = 1;
  return config;
}

}  // namespace

TEST_CASE("dynamics names") {
  CHECK(std::string(dynamics_name(DynamicsKind::Random)) == "RANDOM");
  CHECK(std::string(dynamics_name(DynamicsKind::DomainRandom)) == "DM-RND");
  CHECK(std::string(dynamics_name(DynamicsKind::DomainCluster)) == "DM-CLS");
}

TEST_CASE("config validation") {
  auto config = small_config();
  CHECK_NOTHROW(config.validate());

  auto bad = config;
  bad.random_domain_size = 5;  // does not divide 36
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.distortion = 0.5;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.groups.group_count = 0;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.groups.fixed_sizes = {10, 10, 10};  // sums to 30, not 36
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.matrix_count = 0;
  CHECK_THROWS_AS(bad.validate(), Error);

  bad = config;
  bad.threads = 0;
  CHECK_THROWS_AS(bad.validate(), Error);

  // fixed sizes that do sum to N pass
  auto good = config;
  good.groups.fixed_sizes = {6, 6, 6, 6, 6, 6};
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("protocol results have the right shape and sane records") {
  const auto config = small_config();
  const auto result = run_protocol(config);
  CHECK(result.matrix_count == 3);
  CHECK(result.start_count == 8);
  CHECK(result.records.size() == 3u * kDynamicsCount * 8u);
  REQUIRE(result.group_sizes.size() == 3);
  for (const auto& sizes : result.group_sizes) {
    int total = 0;
    for (int k : sizes) total += k;
    CHECK(total == 36);
  }
  for (int m = 0; m < 3; ++m) {
    for (int s = 0; s < 8; ++s) {
      const auto& random = result.at(m, DynamicsKind::Random, s);
      CHECK(std::isnan(random.domain_energy));
      CHECK(!random.has_r);
      CHECK(random.final_energy < 0.0);
      for (DynamicsKind kind : {DynamicsKind::DomainRandom, DynamicsKind::DomainCluster}) {
        const auto& trial = result.at(m, kind, s);
        CHECK(trial.final_energy <= trial.domain_energy + 1e-12);
        if (trial.has_r) {
          CHECK(trial.r_share >= 0.0);
          CHECK(trial.r_share < 1.0);
        }
      }
    }
  }
}

TEST_CASE("the protocol is deterministic and thread-count independent") {
  auto config = small_config();
  const auto a = run_protocol(config);
  const auto b = run_protocol(config);
  CHECK(same_records(a.records, b.records));
  CHECK(a.group_sizes == b.group_sizes);

  config.threads = 2;
  const auto c = run_protocol(config);
  CHECK(same_records(a.records, c.records));
  CHECK(a.group_sizes == c.group_sizes);

  config.threads = 1;
  config.seed = 4243;
  const auto d = run_protocol(config);
  CHECK(!same_records(a.records, d.records));
}

TEST_CASE("frequency report counts hits per matrix and averages over matrices") {
  const auto config = small_config();
  const auto result = run_protocol(config);
  const auto report = deepest_frequency_report(result);
  CHECK(report.matrix_count == 3);
  CHECK(report.starts_per_matrix == 8);
  REQUIRE(report.deepest_energy.size() == 3);
  REQUIRE(report.hits.size() == 3);
  for (int m = 0; m < 3; ++m) {
    const double deepest = report.deepest_energy[m];
    int total_hits = 0;
    for (int k = 0; k < kDynamicsCount; ++k) {
      CHECK(report.hits[m][k] >= 0);
      CHECK(report.hits[m][k] <= 8);
      total_hits += report.hits[m][k];
    }
    CHECK(total_hits >= 1);  // someone attained the pooled deepest
    // deepest really is the pooled minimum
    for (int k = 0; k < kDynamicsCount; ++k) {
      for (int s = 0; s < 8; ++s) {
        CHECK(result.at(m, static_cast<DynamicsKind>(k), s).final_energy >= deepest - 1e-9);
      }
    }
  }
  for (int k = 0; k < kDynamicsCount; ++k) {
    double mean = 0.0;
    for (int m = 0; m < 3; ++m) mean += static_cast<double>(report.hits[m][k]) / 8.0;
    mean /= 3.0;
    CHECK(report.mean_frequency[k] == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("a single matrix and start yields frequencies in {0, 1}") {
  auto config = small_config();
  config.matrix_count = 1;
  config.start_count = 1;
  const auto report = deepest_frequency_experiment(config);
  int winners = 0;
  for (int k = 0; k < kDynamicsCount; ++k) {
    CHECK((report.mean_frequency[k] == 0.0 || report.mean_frequency[k] == 1.0));
    if (report.mean_frequency[k] == 1.0) ++winners;
  }
  CHECK(winners >= 1);
}

TEST_CASE("distortion sweep reproduces the standalone report at the matching b") {
  auto config = small_config();
  config.matrix_count = 2;
  config.start_count = 4;
  const auto sweep = distortion_sweep(config, {0.0, 0.1});
  REQUIRE(sweep.per_b.size() == 2);
  CHECK(sweep.b_values == std::vector<double>{0.0, 0.1});

  const auto standalone = deepest_frequency_experiment(config);  // b = 0
  CHECK(sweep.per_b[0] == standalone);

  auto distorted = config;
  distorted.distortion = 0.1;
  const auto standalone_b = deepest_frequency_experiment(distorted);
  CHECK(sweep.per_b[1] == standalone_b);
}

TEST_CASE("r characteristics: DM-CLS at b = 0 sits at exactly zero") {
  auto config = small_config();
  config.matrix_count = 2;
  config.start_count = 6;
  const auto report = r_characteristic_experiment(config, {0.0});
  REQUIRE(report.dm_cls.size() == 1);
  CHECK(report.dm_cls[0].mean_r == 0.0);
  CHECK(report.dm_cls[0].defined_runs == 12);
  CHECK(report.dm_cls[0].undefined_runs == 0);
  CHECK(report.dm_rnd[0].mean_r >= 0.0);
  CHECK(report.dm_rnd[0].mean_r <= 1.0);
  CHECK(report.dm_rnd[0].defined_runs + report.dm_rnd[0].undefined_runs == 12);
}

TEST_CASE("r characteristics agree with a manual aggregation of the records") {
  auto config = small_config();
  config.matrix_count = 2;
  config.start_count = 5;
  config.distortion = 0.1;
  const auto result = run_protocol(config);
  const auto report = r_characteristic_report({0.1}, {result});

  double matrix_mean_sum = 0.0;
  int matrices_with_data = 0;
  std::int64_t defined = 0;
  for (int m = 0; m < 2; ++m) {
    double sum = 0.0;
    int count = 0;
    for (int s = 0; s < 5; ++s) {
      const auto& trial = result.at(m, DynamicsKind::DomainRandom, s);
      if (trial.has_r) {
        sum += trial.r_share;
        ++count;
        ++defined;
      }
    }
    if (count > 0) {
      matrix_mean_sum += sum / count;
      ++matrices_with_data;
    }
  }
  REQUIRE(matrices_with_data > 0);
  CHECK(report.dm_rnd[0].mean_r ==
        doctest::Approx(matrix_mean_sum / matrices_with_data).epsilon(1e-12));
  CHECK(report.dm_rnd[0].defined_runs == defined);
}

TEST_CASE("table of same-group couplings against (1 - 2b)^2") {
  const std::vector<int> sizes = {10, 15, 20, 25};
  const auto report = table1_experiment(sizes, 600, {0.02, 0.05, 0.1, 0.2}, 99);
  CHECK(report.pattern_dim == 600);
  REQUIRE(report.rows.size() == 4);
  for (const auto& row : report.rows) {
    const double expected = (1.0 - 2.0 * row.distortion) * (1.0 - 2.0 * row.distortion);
    CHECK(row.expected == doctest::Approx(expected).epsilon(1e-12));
    CHECK(row.mean_coupling == doctest::Approx(expected).epsilon(0.1));
  }
  // b = 0 comes out exact
  const auto zero = table1_experiment(sizes, 600, {0.0}, 99);
  CHECK(zero.rows[0].mean_coupling == 1.0);
}
