#ifndef DOMINO_IO_HPP
#define DOMINO_IO_HPP

#include <filesystem>
#include <string>

#include "domino/experiments.hpp"
#include "domino/hebbian.hpp"
#include "domino/model.hpp"
#include "domino/oracle.hpp"

namespace domino::io {

/// Doubles are written with 17 significant digits ("%.17g"), enough to
/// round-trip exactly.
std::string format_double(double value);

// Plain-text formats. All indices in files are 1-based. Parsers report
// malformed content as Error{ParseError} with a file:line:column
// diagnostic and never repair silently.

/// Matrix file: line 1 is N, then N lines of N reals separated by
/// single spaces. Loading re-validates symmetry and the zero diagonal.
void write_matrix(const std::filesystem::path& path, const ConnectionMatrix& matrix);
ConnectionMatrix read_matrix(const std::filesystem::path& path);

/// Partition file: line 1 is "N n", then N lines with the 1-based
/// domain index of each spin.
void write_partition(const std::filesystem::path& path, const DomainPartition& partition);
DomainPartition read_partition(const std::filesystem::path& path);

/// Configuration file: one line of N entries from {+1, -1}.
void write_configuration(const std::filesystem::path& path, const SpinConfiguration& config);
SpinConfiguration read_configuration(const std::filesystem::path& path);

/// Pattern file: line 1 is "M N", then M rows of N entries from {+1, -1}.
void write_pattern_matrix(const std::filesystem::path& path, const PatternMatrix& patterns);
PatternMatrix read_pattern_matrix(const std::filesystem::path& path);

// CSV outputs: header row, comma separators, decimal points, no locale
// formatting.

/// fig1.csv: matrix,dynamics,deepest_energy,hits,runs,frequency
void write_fig1_csv(const std::filesystem::path& path, const FrequencyReport& report);

/// fig2.csv: b,dynamics,mean_frequency
void write_fig2_csv(const std::filesystem::path& path, const DistortionSweepReport& report);

/// fig3.csv: b,dynamics,mean_r,defined_runs,undefined_runs
void write_fig3_csv(const std::filesystem::path& path, const RCharacteristicReport& report);

/// table1.csv: b,mean_intragroup_coupling,expected
void write_table1_csv(const std::filesystem::path& path, const Table1Report& report);

/// oracle CSV: kind,energy,configuration
void write_oracle_csv(const std::filesystem::path& path, const OracleReport& report);

/// "+1 -1 ..." rendering of a configuration.
std::string configuration_to_string(const SpinConfiguration& config);

}  // namespace domino::io

#endif
