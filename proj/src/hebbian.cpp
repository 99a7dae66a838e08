#include "domino/hebbian.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace domino {

PatternMatrix::PatternMatrix(int dimension, int columns)
    : dimension_(dimension),
      columns_(columns),
      data_(static_cast<std::size_t>(dimension) * columns, 1) {
  if (dimension < 1 || columns < 1) {
    throw Error(ErrorCode::InvalidSpec, "pattern matrix needs M >= 1 and N >= 1");
  }
}

int GroupSpec::total_spins() const {
  return std::accumulate(sizes.begin(), sizes.end(), 0);
}

void GroupSpec::validate() const {
  if (sizes.empty()) {
    throw Error(ErrorCode::InvalidSpec, "group spec needs at least one group");
  }
  for (std::size_t l = 0; l < sizes.size(); ++l) {
    if (sizes[l] < 1) {
      throw Error(ErrorCode::InvalidSpec,
                  "group " + std::to_string(l + 1) + " has size " + std::to_string(sizes[l]) +
                      ", expected >= 1");
    }
  }
  if (!(distortion >= 0.0 && distortion < 0.5)) {
    throw Error(ErrorCode::InvalidSpec,
                "distortion b = " + std::to_string(distortion) + " outside [0, 0.5)");
  }
}

PatternMatrix generate_pattern_matrix(int dimension, const GroupSpec& spec, std::uint64_t seed) {
  spec.validate();
  if (dimension < 1) {
    throw Error(ErrorCode::InvalidSpec, "pattern dimension M must be >= 1");
  }
  PatternMatrix out(dimension, spec.total_spins());
  Rng rng(seed);
  std::vector<std::int8_t> prototype(static_cast<std::size_t>(dimension));
  int column = 0;
  for (int size : spec.sizes) {
    for (int mu = 0; mu < dimension; ++mu) prototype[mu] = static_cast<std::int8_t>(rng.sign());
    for (int c = 0; c < size; ++c, ++column) {
      std::int8_t* dst = out.column(column);
      for (int mu = 0; mu < dimension; ++mu) {
        const bool flip = spec.distortion > 0.0 && rng.bernoulli(spec.distortion);
        dst[mu] = flip ? static_cast<std::int8_t>(-prototype[mu]) : prototype[mu];
      }
    }
  }
  return out;
}

ConnectionMatrix hebbian_matrix(const PatternMatrix& patterns) {
  const int n = patterns.columns();
  const int m = patterns.dimension();
  if (n < 2) {
    throw Error(ErrorCode::InvalidSpec, "Hebbian matrix needs at least two pattern columns");
  }
  std::vector<double> entries(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::int8_t* xi = patterns.column(i);
    for (int j = i + 1; j < n; ++j) {
      const std::int8_t* xj = patterns.column(j);
      int dot = 0;
      for (int mu = 0; mu < m; ++mu) dot += xi[mu] * xj[mu];
      const double value = static_cast<double>(dot) / m;
      entries[static_cast<std::size_t>(i) * n + j] = value;
      entries[static_cast<std::size_t>(j) * n + i] = value;
    }
  }
  return ConnectionMatrix::validate_flat(n, std::move(entries));
}

DomainPartition cluster_partition(const GroupSpec& spec) {
  spec.validate();
  std::vector<std::int32_t> assignment;
  assignment.reserve(static_cast<std::size_t>(spec.total_spins()));
  for (int l = 0; l < spec.group_count(); ++l) {
    assignment.insert(assignment.end(), static_cast<std::size_t>(spec.sizes[l]), l);
  }
  return DomainPartition::from_assignment(std::move(assignment), spec.group_count());
}

DomainPartition random_partition(int total_spins, int domain_size, std::uint64_t seed) {
  if (total_spins < 1 || domain_size < 1) {
    throw Error(ErrorCode::InvalidSpec, "partition sizes must be positive");
  }
  if (total_spins % domain_size != 0) {
    throw Error(ErrorCode::NotDivisible,
                "domain size " + std::to_string(domain_size) + " does not divide N = " +
                    std::to_string(total_spins));
  }
  std::vector<int> order(static_cast<std::size_t>(total_spins));
  for (int i = 0; i < total_spins; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  std::vector<std::int32_t> assignment(static_cast<std::size_t>(total_spins));
  for (int pos = 0; pos < total_spins; ++pos) {
    assignment[order[pos]] = static_cast<std::int32_t>(pos / domain_size);
  }
  return DomainPartition::from_assignment(std::move(assignment), total_spins / domain_size);
}

SpinConfiguration random_block_start(const GroupSpec& spec, std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::vector<std::int8_t> spins;
  spins.reserve(static_cast<std::size_t>(spec.total_spins()));
  for (int size : spec.sizes) {
    const std::int8_t sign = static_cast<std::int8_t>(rng.sign());
    spins.insert(spins.end(), static_cast<std::size_t>(size), sign);
  }
  return SpinConfiguration::validate(std::move(spins));
}

SpinConfiguration random_configuration(int size, Rng& rng) {
  std::vector<std::int8_t> spins(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) spins[i] = static_cast<std::int8_t>(rng.sign());
  return SpinConfiguration::validate(std::move(spins));
}

SpinConfiguration random_configuration(int size, std::uint64_t seed) {
  Rng rng(seed);
  return random_configuration(size, rng);
}

double mean_intragroup_coupling(const ConnectionMatrix& J, const GroupSpec& spec) {
  spec.validate();
  if (spec.total_spins() != J.size()) {
    throw Error(ErrorCode::SpecMismatch,
                "group spec covers " + std::to_string(spec.total_spins()) +
                    " spins, matrix size is " + std::to_string(J.size()));
  }
  double sum = 0.0;
  std::int64_t pairs = 0;
  int offset = 0;
  for (int size : spec.sizes) {
    for (int i = offset; i < offset + size; ++i) {
      for (int j = offset; j < offset + size; ++j) {
        if (i == j) continue;
        sum += J.at(i, j);
        ++pairs;
      }
    }
    offset += size;
  }
  if (pairs == 0) {
    throw Error(ErrorCode::SpecMismatch, "no same-group pairs: every group has size 1");
  }
  return sum / static_cast<double>(pairs);
}

std::vector<int> random_group_sizes(int total, int groups, int low, int high, Rng& rng) {
  if (groups < 1 || low < 1 || high < low) {
    throw Error(ErrorCode::InvalidSpec, "group size range must satisfy 1 <= low <= high");
  }
  if (static_cast<std::int64_t>(groups) * low > total ||
      static_cast<std::int64_t>(groups) * high < total) {
    throw Error(ErrorCode::InvalidSpec,
                "cannot split " + std::to_string(total) + " spins into " + std::to_string(groups) +
                    " groups of size in [" + std::to_string(low) + ", " + std::to_string(high) +
                    "]");
  }
  std::vector<int> sizes(static_cast<std::size_t>(groups));
  int sum = 0;
  for (int l = 0; l < groups; ++l) {
    sizes[l] = low + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(high - low + 1)));
    sum += sizes[l];
  }
  // Nudge random entries toward the target sum, respecting the bounds.
  while (sum != total) {
    const int l = static_cast<int>(rng.uniform_index(sizes.size()));
    if (sum < total && sizes[l] < high) {
      ++sizes[l];
      ++sum;
    } else if (sum > total && sizes[l] > low) {
      --sizes[l];
      --sum;
    }
  }
  return sizes;
}

ConnectionMatrix random_symmetric_matrix(int size, std::uint64_t seed) {
  if (size < 1) {
    throw Error(ErrorCode::InvalidSpec, "matrix size must be >= 1");
  }
  Rng rng(seed);
  std::vector<double> entries(static_cast<std::size_t>(size) * size, 0.0);
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      const double value = rng.normal();
      entries[static_cast<std::size_t>(i) * size + j] = value;
      entries[static_cast<std::size_t>(j) * size + i] = value;
    }
  }
  return ConnectionMatrix::validate_flat(size, std::move(entries));
}

}  // namespace domino
