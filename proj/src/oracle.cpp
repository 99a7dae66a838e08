#include "domino/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <utility>

namespace domino {

namespace {

void sort_minima(std::vector<Minimum>& minima) {
  std::sort(minima.begin(), minima.end(), [](const Minimum& a, const Minimum& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.state.spins() < b.state.spins();
  });
}

bool all_stabilities_ok(const ConnectionMatrix& J, const SpinConfiguration& s,
                          const std::vector<double>& h, const DomainPartition& p) {
  for (int l = 0; l < p.domain_count(); ++l) {
    const auto& members = p.members(l);
    double f = 0.0;
    for (std::int32_t i : members) {
      const double* row = J.row(i);
      double inner = 0.0;
      for (std::int32_t j : members) inner += row[j] * s.spin(j);
      f += s.spin(i) * (h[i] - inner);
    }
    if (f < -kTieTolerance) return false;
  }
  return true;
}

}  // namespace

SpinConfiguration canonical_form(const SpinConfiguration& s) {
  return s.spin(0) == 1 ? s : s.negated();
}

bool minima_contain(const std::vector<Minimum>& minima, const SpinConfiguration& s) {
  const SpinConfiguration canonical = canonical_form(s);
  for (const Minimum& m : minima) {
    if (m.state == canonical) return true;
  }
  return false;
}

OracleReport brute_force_minima(const ConnectionMatrix& J) {
  const int n = J.size();
  if (n > kOracleMaxBits) {
    throw Error(ErrorCode::TooLarge,
                "exhaustive enumeration limited to N <= " + std::to_string(kOracleMaxBits) +
                    ", got N = " + std::to_string(n));
  }
  OracleReport report;
  SpinConfiguration state = SpinConfiguration::all_up(n);
  std::vector<double> h = local_fields(J, state);
  double energy_now = 0.0;
  for (int i = 0; i < n; ++i) energy_now -= state.spin(i) * h[i];
  report.global_minimum_energy = energy_now;

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 0;; ++step) {
    if (energy_now < report.global_minimum_energy) report.global_minimum_energy = energy_now;
    bool all_satisfied = true;
    for (int i = 0; i < n; ++i) {
      if (!satisfied(state.spin(i) * h[i])) {
        all_satisfied = false;
        break;
      }
    }
    if (all_satisfied && state.spin(0) == 1) {
      report.local_minima.push_back({state, energy(J, state)});
    }
    if (step + 1 == total) break;
    // Gray-code step: exactly one spin flips per visited configuration.
    const int flip = std::countr_zero(step + 1);
    energy_now += 4.0 * state.spin(flip) * h[flip];
    state.flip(flip);
    const double two_s = 2.0 * state.spin(flip);
    const double* row = J.row(flip);
    for (int j = 0; j < n; ++j) h[j] += two_s * row[j];
  }
  sort_minima(report.local_minima);
  return report;
}

OracleReport brute_force_domain_minima(const ConnectionMatrix& J, const DomainPartition& p,
                                       const SpinConfiguration& reference) {
  require_dimension_match(J, reference);
  require_partition_match(J, p);
  const int domains = p.domain_count();
  if (domains > kOracleMaxBits) {
    throw Error(ErrorCode::TooLarge,
                "exhaustive domain enumeration limited to n <= " + std::to_string(kOracleMaxBits) +
                    ", got n = " + std::to_string(domains));
  }
  OracleReport report;
  SpinConfiguration state = reference;
  std::vector<double> h = local_fields(J, state);
  double energy_now = 0.0;
  for (int i = 0; i < J.size(); ++i) energy_now -= state.spin(i) * h[i];
  report.global_minimum_energy = energy_now;

  const std::uint64_t total = std::uint64_t{1} << domains;
  for (std::uint64_t step = 0;; ++step) {
    if (energy_now < report.global_minimum_energy) report.global_minimum_energy = energy_now;
    if (all_stabilities_ok(J, state, h, p) && state.spin(0) == 1) {
      report.domain_local_minima.push_back({state, energy(J, state)});
    }
    if (step + 1 == total) break;
    const int flip_domain = std::countr_zero(step + 1);
    const auto& members = p.members(flip_domain);
    double f = 0.0;
    for (std::int32_t i : members) {
      const double* row = J.row(i);
      double inner = 0.0;
      for (std::int32_t j : members) inner += row[j] * state.spin(j);
      f += state.spin(i) * (h[i] - inner);
    }
    energy_now += 4.0 * f;
    for (std::int32_t i : members) {
      const double shift = -2.0 * state.spin(i);
      const double* row = J.row(i);
      for (int j = 0; j < J.size(); ++j) h[j] += shift * row[j];
    }
    for (std::int32_t i : members) state.flip(i);
  }
  sort_minima(report.domain_local_minima);
  return report;
}

OracleReport brute_force_domain_minima(const ConnectionMatrix& J, const DomainPartition& p) {
  return brute_force_domain_minima(J, p, SpinConfiguration::all_up(J.size()));
}

}  // namespace domino
