#ifndef DOMINO_MODEL_HPP
#define DOMINO_MODEL_HPP

#include <cstdint>
#include <vector>

#include "domino/error.hpp"

namespace domino {

// Internal indices are 0-based everywhere; file formats and CLI
// diagnostics use 1-based indices.

/// Computed products s_i * h_i that land within this band of zero are
/// treated as ties, and ties count as satisfied / stable. Keeps the
/// zero-field convention intact under floating-point noise.
constexpr double kTieTolerance = 1e-12;

/// Symmetry tolerance for matrix validation.
constexpr double kSymmetryTolerance = 1e-12;

/// Symmetric coupling matrix with zero diagonal, dense row-major storage.
class ConnectionMatrix {
 public:
  /// Validates squareness, symmetry (within kSymmetryTolerance) and the
  /// zero diagonal. Throws Error{NotSquare | AsymmetricEntry | NonzeroDiagonal}.
  static ConnectionMatrix validate(const std::vector<std::vector<double>>& raw);

  /// Validates a flat row-major buffer of size*size entries.
  static ConnectionMatrix validate_flat(int size, std::vector<double> entries);

  int size() const { return size_; }
  double at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * size_ + j]; }
  const double* row(int i) const { return entries_.data() + static_cast<std::size_t>(i) * size_; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  ConnectionMatrix(int size, std::vector<double> entries)
      : size_(size), entries_(std::move(entries)) {}

  int size_ = 0;
  std::vector<double> entries_;  // row-major, size_ * size_
};

/// Vector of N spins, each exactly -1 or +1.
class SpinConfiguration {
 public:
  static SpinConfiguration validate(std::vector<std::int8_t> spins);

  /// All spins set to +1.
  static SpinConfiguration all_up(int size);

  int size() const { return static_cast<int>(spins_.size()); }
  int spin(int i) const { return spins_[i]; }
  const std::vector<std::int8_t>& spins() const { return spins_; }

  void flip(int i) { spins_[i] = static_cast<std::int8_t>(-spins_[i]); }
  SpinConfiguration negated() const;

  bool operator==(const SpinConfiguration& other) const { return spins_ == other.spins_; }
  bool operator!=(const SpinConfiguration& other) const { return spins_ != other.spins_; }

 private:
  explicit SpinConfiguration(std::vector<std::int8_t> spins) : spins_(std::move(spins)) {}

  std::vector<std::int8_t> spins_;
};

/// Disjoint cover of {0..N-1} by n non-empty domains. Domains need not
/// be contiguous index ranges.
class DomainPartition {
 public:
  /// assignment[i] is the 0-based domain of spin i, values in [0, n).
  /// Throws Error{InvalidSpec} if some domain is empty or an index is out
  /// of range.
  static DomainPartition from_assignment(std::vector<std::int32_t> assignment, int domain_count);

  /// One singleton domain per spin, domain i = {i}.
  static DomainPartition singletons(int size);

  int spin_count() const { return static_cast<int>(assignment_.size()); }
  int domain_count() const { return static_cast<int>(members_.size()); }
  int domain_of(int i) const { return assignment_[i]; }
  const std::vector<std::int32_t>& members(int l) const { return members_[l]; }
  int domain_size(int l) const { return static_cast<int>(members_[l].size()); }
  const std::vector<std::int32_t>& assignment() const { return assignment_; }

 private:
  DomainPartition(std::vector<std::int32_t> assignment,
                  std::vector<std::vector<std::int32_t>> members)
      : assignment_(std::move(assignment)), members_(std::move(members)) {}

  std::vector<std::int32_t> assignment_;
  std::vector<std::vector<std::int32_t>> members_;
};

struct EnergyBreakdown {
  double total = 0.0;                // E
  double domain_part = 0.0;          // inter-domain part E^(d)
  std::vector<double> intra_parts;   // per-domain E_l^(in)
};

/// E(s) = -sum_{i,j} J_ij s_i s_j, full ordered double sum (each
/// coupling counted twice).
double energy(const ConnectionMatrix& J, const SpinConfiguration& s);

/// h_i = sum_j J_ij s_j. Spin i is satisfied iff s_i * h_i >= 0.
double local_field(const ConnectionMatrix& J, const SpinConfiguration& s, int i);

/// All local fields in one pass.
std::vector<double> local_fields(const ConnectionMatrix& J, const SpinConfiguration& s);

/// h_i^(d) = h_i minus the same-domain contributions.
double domain_local_field(const ConnectionMatrix& J, const SpinConfiguration& s,
                          const DomainPartition& p, int i);

/// F_l = sum_{i in domain l} s_i h_i^(d). Domain l is stable iff F_l >= 0.
double domain_stability(const ConnectionMatrix& J, const SpinConfiguration& s,
                        const DomainPartition& p, int l);

/// Splits E into the inter-domain part -sum_l F_l and the per-domain
/// intra parts; total == domain_part + sum(intra_parts).
EnergyBreakdown energy_breakdown(const ConnectionMatrix& J, const SpinConfiguration& s,
                                 const DomainPartition& p);

/// Tie-tolerant satisfaction test on a precomputed product s_i * h_i.
inline bool satisfied(double spin_times_field) {
  return spin_times_field >= -kTieTolerance;
}

/// True iff every spin is satisfied (local minimum of the energy).
bool is_local_minimum(const ConnectionMatrix& J, const SpinConfiguration& s);

/// True iff every domain is stable (domain local minimum).
bool is_domain_local_minimum(const ConnectionMatrix& J, const SpinConfiguration& s,
                             const DomainPartition& p);

void require_dimension_match(const ConnectionMatrix& J, const SpinConfiguration& s);
void require_partition_match(const ConnectionMatrix& J, const DomainPartition& p);

}  // namespace domino

#endif
