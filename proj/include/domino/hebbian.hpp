#ifndef DOMINO_HEBBIAN_HPP
#define DOMINO_HEBBIAN_HPP

#include <cstdint>
#include <vector>

#include "domino/model.hpp"
#include "domino/rng.hpp"

namespace domino {

/// M x N matrix of +-1 pattern columns, stored column-major.
class PatternMatrix {
 public:
  PatternMatrix(int dimension, int columns);

  int dimension() const { return dimension_; }  // M
  int columns() const { return columns_; }      // N

  std::int8_t entry(int mu, int i) const {
    return data_[static_cast<std::size_t>(i) * dimension_ + mu];
  }
  std::int8_t* column(int i) { return data_.data() + static_cast<std::size_t>(i) * dimension_; }
  const std::int8_t* column(int i) const {
    return data_.data() + static_cast<std::size_t>(i) * dimension_;
  }

 private:
  int dimension_;
  int columns_;
  std::vector<std::int8_t> data_;
};

/// Layout of repeated-column groups plus the distortion level b.
struct GroupSpec {
  std::vector<int> sizes;  // k_l >= 1
  double distortion = 0.0;  // b in [0, 0.5)

  int group_count() const { return static_cast<int>(sizes.size()); }
  int total_spins() const;

  /// Throws Error{InvalidSpec} on empty sizes, nonpositive k_l, or b
  /// outside [0, 0.5).
  void validate() const;
};

/// Draws one +-1 prototype per group, then emits k_l columns per group,
/// each an independent multiplicative distortion of the prototype: every
/// coordinate flips sign with probability b. b = 0 reproduces the exact
/// repeated-column layout.
PatternMatrix generate_pattern_matrix(int dimension, const GroupSpec& spec, std::uint64_t seed);

/// J_ij = (1 - delta_ij) (x_i, x_j) / M; symmetric, zero diagonal,
/// |J_ij| <= 1. Requires at least two columns.
ConnectionMatrix hebbian_matrix(const PatternMatrix& patterns);

/// Domain l = exactly the contiguous index range of group l.
DomainPartition cluster_partition(const GroupSpec& spec);

/// Uniform random permutation of 0..N-1 chopped into N/k domains of
/// size k. Throws Error{NotDivisible} when k does not divide N.
DomainPartition random_partition(int total_spins, int domain_size, std::uint64_t seed);

/// Block-constant configuration: one random sign per group, repeated
/// over the group's index range.
SpinConfiguration random_block_start(const GroupSpec& spec, std::uint64_t seed);

/// Uniform random +-1 configuration.
SpinConfiguration random_configuration(int size, Rng& rng);
SpinConfiguration random_configuration(int size, std::uint64_t seed);

/// Average of J_ij over all same-group pairs i != j, for a matrix built
/// from this spec's contiguous layout. For b = 0 the result is exactly 1;
/// in general it estimates (1 - 2b)^2.
double mean_intragroup_coupling(const ConnectionMatrix& J, const GroupSpec& spec);

/// n group sizes drawn uniformly from [low, high] and then nudged
/// entry-by-entry until they sum to total. Requires n*low <= total <= n*high.
std::vector<int> random_group_sizes(int total, int groups, int low, int high, Rng& rng);

/// Symmetric matrix with zero diagonal and standard normal couplings on
/// the off-diagonal (J_ij == J_ji drawn once per unordered pair).
ConnectionMatrix random_symmetric_matrix(int size, std::uint64_t seed);

}  // namespace domino

#endif
