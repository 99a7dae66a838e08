#include "domino/model.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>

namespace domino {

namespace {

std::string index_pair_1based(int i, int j) {
  return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::AsymmetricEntry: return "AsymmetricEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PartitionMismatch: return "PartitionMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ConnectionMatrix ConnectionMatrix::validate(const std::vector<std::vector<double>>& raw) {
  const int n = static_cast<int>(raw.size());
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(raw[i].size()) != n) {
      throw Error(ErrorCode::NotSquare,
                  "matrix row " + std::to_string(i + 1) + " has " +
                      std::to_string(raw[i].size()) + " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), raw[i].begin(), raw[i].end());
  }
  return validate_flat(n, std::move(flat));
}

ConnectionMatrix ConnectionMatrix::validate_flat(int size, std::vector<double> entries) {
  if (size < 1 || entries.size() != static_cast<std::size_t>(size) * size) {
    throw Error(ErrorCode::NotSquare,
                "expected " + std::to_string(size) + "x" + std::to_string(size) +
                    " entries, got " + std::to_string(entries.size()));
  }
  for (int i = 0; i < size; ++i) {
    const double diag = entries[static_cast<std::size_t>(i) * size + i];
    if (diag != 0.0) {
      throw Error(ErrorCode::NonzeroDiagonal,
                  "diagonal entry " + std::to_string(i + 1) + " is " + std::to_string(diag) +
                      ", expected 0");
    }
    for (int j = i + 1; j < size; ++j) {
      const double a = entries[static_cast<std::size_t>(i) * size + j];
      const double b = entries[static_cast<std::size_t>(j) * size + i];
      const double delta = std::fabs(a - b);
      if (delta > kSymmetryTolerance) {
        throw Error(ErrorCode::AsymmetricEntry,
                    "entries " + index_pair_1based(i, j) + " differ by " + std::to_string(delta));
      }
    }
  }
  return ConnectionMatrix(size, std::move(entries));
}

SpinConfiguration SpinConfiguration::validate(std::vector<std::int8_t> spins) {
  for (std::size_t i = 0; i < spins.size(); ++i) {
    if (spins[i] != 1 && spins[i] != -1) {
      throw Error(ErrorCode::InvalidSpec,
                  "spin " + std::to_string(i + 1) + " is " + std::to_string(spins[i]) +
                      ", expected -1 or +1");
    }
  }
  return SpinConfiguration(std::move(spins));
}

SpinConfiguration SpinConfiguration::all_up(int size) {
  return SpinConfiguration(std::vector<std::int8_t>(static_cast<std::size_t>(size), 1));
}

SpinConfiguration SpinConfiguration::negated() const {
  std::vector<std::int8_t> out(spins_.size());
  for (std::size_t i = 0; i < spins_.size(); ++i) out[i] = static_cast<std::int8_t>(-spins_[i]);
  return SpinConfiguration(std::move(out));
}

DomainPartition DomainPartition::from_assignment(std::vector<std::int32_t> assignment,
                                                 int domain_count) {
  if (domain_count < 1 || assignment.empty()) {
    throw Error(ErrorCode::InvalidSpec, "partition needs at least one domain and one spin");
  }
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(domain_count));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const std::int32_t d = assignment[i];
    if (d < 0 || d >= domain_count) {
      throw Error(ErrorCode::InvalidSpec,
                  "spin " + std::to_string(i + 1) + " assigned to domain " + std::to_string(d + 1) +
                      ", valid range is 1.." + std::to_string(domain_count));
    }
    members[d].push_back(static_cast<std::int32_t>(i));
  }
  for (int l = 0; l < domain_count; ++l) {
    if (members[l].empty()) {
      throw Error(ErrorCode::InvalidSpec, "domain " + std::to_string(l + 1) + " is empty");
    }
  }
  return DomainPartition(std::move(assignment), std::move(members));
}

DomainPartition DomainPartition::singletons(int size) {
  std::vector<std::int32_t> assignment(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) assignment[i] = i;
  return from_assignment(std::move(assignment), size);
}

void require_dimension_match(const ConnectionMatrix& J, const SpinConfiguration& s) {
  if (J.size() != s.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix size " + std::to_string(J.size()) + " vs configuration size " +
                    std::to_string(s.size()));
  }
}

void require_partition_match(const ConnectionMatrix& J, const DomainPartition& p) {
  if (J.size() != p.spin_count()) {
    throw Error(ErrorCode::PartitionMismatch,
                "matrix size " + std::to_string(J.size()) + " vs partition over " +
                    std::to_string(p.spin_count()) + " spins");
  }
}

double energy(const ConnectionMatrix& J, const SpinConfiguration& s) {
  require_dimension_match(J, s);
  const int n = J.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double* row = J.row(i);
    double h = 0.0;
    for (int j = 0; j < n; ++j) h += row[j] * s.spin(j);
    total += s.spin(i) * h;
  }
  const double e = -total;
  return e == 0.0 ? 0.0 : e;  // never hand out -0
}

double local_field(const ConnectionMatrix& J, const SpinConfiguration& s, int i) {
  require_dimension_match(J, s);
  if (i < 0 || i >= J.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "spin index " + std::to_string(i + 1) + " outside 1.." + std::to_string(J.size()));
  }
  const double* row = J.row(i);
  double h = 0.0;
  for (int j = 0; j < J.size(); ++j) h += row[j] * s.spin(j);
  return h;
}

std::vector<double> local_fields(const ConnectionMatrix& J, const SpinConfiguration& s) {
  require_dimension_match(J, s);
  const int n = J.size();
  std::vector<double> h(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double* row = J.row(i);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * s.spin(j);
    h[i] = acc;
  }
  return h;
}

double domain_local_field(const ConnectionMatrix& J, const SpinConfiguration& s,
                          const DomainPartition& p, int i) {
  require_dimension_match(J, s);
  require_partition_match(J, p);
  if (i < 0 || i >= J.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "spin index " + std::to_string(i + 1) + " outside 1.." + std::to_string(J.size()));
  }
  // Summed directly over out-of-domain spins rather than as h_i minus the
  // same-domain part: the subtraction would leave rounding residue, and an
  // all-covering domain must give exactly zero.
  const double* row = J.row(i);
  const std::int32_t dom = p.domain_of(i);
  double h = 0.0;
  for (int j = 0; j < J.size(); ++j) {
    if (p.domain_of(j) != dom) h += row[j] * s.spin(j);
  }
  return h;
}

double domain_stability(const ConnectionMatrix& J, const SpinConfiguration& s,
                        const DomainPartition& p, int l) {
  require_dimension_match(J, s);
  require_partition_match(J, p);
  if (l < 0 || l >= p.domain_count()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "domain index " + std::to_string(l + 1) + " outside 1.." +
                    std::to_string(p.domain_count()));
  }
  double f = 0.0;
  for (std::int32_t i : p.members(l)) {
    f += s.spin(i) * domain_local_field(J, s, p, i);
  }
  return f;
}

EnergyBreakdown energy_breakdown(const ConnectionMatrix& J, const SpinConfiguration& s,
                                 const DomainPartition& p) {
  require_dimension_match(J, s);
  require_partition_match(J, p);
  EnergyBreakdown out;
  out.total = energy(J, s);
  out.intra_parts.assign(static_cast<std::size_t>(p.domain_count()), 0.0);
  for (int l = 0; l < p.domain_count(); ++l) {
    const auto& dom = p.members(l);
    double intra = 0.0;
    for (std::int32_t i : dom) {
      const double* row = J.row(i);
      for (std::int32_t j : dom) intra += row[j] * s.spin(i) * s.spin(j);
    }
    out.intra_parts[l] = -intra;
    out.domain_part -= domain_stability(J, s, p, l);
  }
  return out;
}

bool is_local_minimum(const ConnectionMatrix& J, const SpinConfiguration& s) {
  const std::vector<double> h = local_fields(J, s);
  for (int i = 0; i < J.size(); ++i) {
    if (!satisfied(s.spin(i) * h[i])) return false;
  }
  return true;
}

bool is_domain_local_minimum(const ConnectionMatrix& J, const SpinConfiguration& s,
                             const DomainPartition& p) {
  for (int l = 0; l < p.domain_count(); ++l) {
    if (domain_stability(J, s, p, l) < -kTieTolerance) return false;
  }
  return true;
}

}  // namespace domino
