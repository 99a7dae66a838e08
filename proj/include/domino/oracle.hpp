#ifndef DOMINO_ORACLE_HPP
#define DOMINO_ORACLE_HPP

#include <vector>

#include "domino/model.hpp"

namespace domino {

/// Enumeration guard for the exhaustive oracles.
constexpr int kOracleMaxBits = 24;

struct Minimum {
  SpinConfiguration state;
  double energy = 0.0;
};

/// Exhaustive-enumeration results. Minima are stored once per {s, -s}
/// pair, canonicalized so that the first spin is +1, sorted by energy
/// then lexicographically.
struct OracleReport {
  std::vector<Minimum> local_minima;
  std::vector<Minimum> domain_local_minima;
  double global_minimum_energy = 0.0;
};

/// Walks all 2^N configurations (Gray-code order, incremental fields)
/// and reports every state with all spins satisfied, plus the global
/// minimum energy. Throws Error{TooLarge} for N > kOracleMaxBits.
OracleReport brute_force_minima(const ConnectionMatrix& J);

/// Walks the 2^n states reachable from `reference` by whole-domain
/// flips and reports those with F_l >= 0 for every domain. For a
/// cluster partition with a block-constant reference this is exactly
/// the block-constant family. Throws Error{TooLarge} for n > kOracleMaxBits.
OracleReport brute_force_domain_minima(const ConnectionMatrix& J, const DomainPartition& p,
                                       const SpinConfiguration& reference);

/// Reference defaulting to the all-up configuration.
OracleReport brute_force_domain_minima(const ConnectionMatrix& J, const DomainPartition& p);

/// Membership test up to global spin flip.
bool minima_contain(const std::vector<Minimum>& minima, const SpinConfiguration& s);

/// Canonical representative of {s, -s}: the one whose first spin is +1.
SpinConfiguration canonical_form(const SpinConfiguration& s);

}  // namespace domino

#endif
