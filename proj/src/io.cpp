#include "domino/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

namespace domino::io {

namespace {

struct Token {
  std::string_view text;
  int line = 0;    // 1-based
  int column = 0;  // 1-based token position within the line
};

/// Whitespace-tokenized view of a text file with positions for
/// diagnostics.
class TokenReader {
 public:
  TokenReader(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorCode::IoError, "cannot open " + path_ + " for reading");
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      lines_.push_back(std::move(line));
      line = {};
    }
    for (int l = 0; l < static_cast<int>(lines_.size()); ++l) {
      std::string_view view = lines_[l];
      int column = 0;
      std::size_t pos = 0;
      while (pos < view.size()) {
        while (pos < view.size() && (view[pos] == ' ' || view[pos] == '\t' || view[pos] == '\r')) {
          ++pos;
        }
        if (pos >= view.size()) break;
        const std::size_t begin = pos;
        while (pos < view.size() && view[pos] != ' ' && view[pos] != '\t' && view[pos] != '\r') {
          ++pos;
        }
        tokens_.push_back({view.substr(begin, pos - begin), l + 1, ++column});
      }
    }
  }

  [[noreturn]] void fail(const Token& token, const std::string& message) const {
    throw Error(ErrorCode::ParseError, path_ + ":" + std::to_string(token.line) + ":" +
                                           std::to_string(token.column) + ": " + message);
  }

  [[noreturn]] void fail_eof(const std::string& message) const {
    throw Error(ErrorCode::ParseError, path_ + ": unexpected end of file: " + message);
  }

  Token next(const char* what) {
    if (cursor_ >= tokens_.size()) fail_eof(std::string("expected ") + what);
    return tokens_[cursor_++];
  }

  bool done() const { return cursor_ >= tokens_.size(); }

  void expect_done() {
    if (cursor_ < tokens_.size()) {
      fail(tokens_[cursor_], "unexpected trailing content");
    }
  }

  long long next_int(const char* what) {
    const Token token = next(what);
    std::string_view text = token.text;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail(token, "expected an integer (" + std::string(what) + "), got '" +
                      std::string(token.text) + "'");
    }
    return value;
  }

  double next_double(const char* what) {
    const Token token = next(what);
    std::string_view text = token.text;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail(token, "expected a real number (" + std::string(what) + "), got '" +
                      std::string(token.text) + "'");
    }
    return value;
  }

  int next_spin(const char* what) {
    const Token token = next(what);
    const long long value = [&] {
      std::string_view text = token.text;
      if (!text.empty() && text.front() == '+') text.remove_prefix(1);
      long long v = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) fail(token, "expected +1 or -1");
      return v;
    }();
    if (value != 1 && value != -1) fail(token, "expected +1 or -1");
    return static_cast<int>(value);
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::vector<std::string> lines_;
  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
};

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  }
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix(const std::filesystem::path& path, const ConnectionMatrix& matrix) {
  std::ofstream out = open_for_write(path);
  const int n = matrix.size();
  out << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) out << ' ';
      out << format_double(matrix.at(i, j));
    }
    out << "\n";
  }
  finish_write(out, path);
}

ConnectionMatrix read_matrix(const std::filesystem::path& path) {
  TokenReader reader(path);
  const long long n = reader.next_int("matrix size N");
  if (n < 1 || n > 1'000'000) {
    throw Error(ErrorCode::ParseError, reader.path() + ": invalid matrix size " +
                                           std::to_string(n));
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (long long i = 0; i < n * n; ++i) entries.push_back(reader.next_double("matrix entry"));
  reader.expect_done();
  return ConnectionMatrix::validate_flat(static_cast<int>(n), std::move(entries));
}

void write_partition(const std::filesystem::path& path, const DomainPartition& partition) {
  std::ofstream out = open_for_write(path);
  out << partition.spin_count() << ' ' << partition.domain_count() << "\n";
  for (int i = 0; i < partition.spin_count(); ++i) {
    out << partition.domain_of(i) + 1 << "\n";
  }
  finish_write(out, path);
}

DomainPartition read_partition(const std::filesystem::path& path) {
  TokenReader reader(path);
  const long long n = reader.next_int("spin count N");
  const long long domains = reader.next_int("domain count n");
  if (n < 1 || domains < 1 || domains > n) {
    throw Error(ErrorCode::ParseError,
                reader.path() + ": invalid header N = " + std::to_string(n) + ", n = " +
                    std::to_string(domains));
  }
  std::vector<std::int32_t> assignment;
  assignment.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const long long d = reader.next_int("domain index");
    if (d < 1 || d > domains) {
      throw Error(ErrorCode::ParseError,
                  reader.path() + ": domain index " + std::to_string(d) + " of spin " +
                      std::to_string(i + 1) + " outside 1.." + std::to_string(domains));
    }
    assignment.push_back(static_cast<std::int32_t>(d - 1));
  }
  reader.expect_done();
  return DomainPartition::from_assignment(std::move(assignment), static_cast<int>(domains));
}

void write_configuration(const std::filesystem::path& path, const SpinConfiguration& config) {
  std::ofstream out = open_for_write(path);
  out << configuration_to_string(config) << "\n";
  finish_write(out, path);
}

SpinConfiguration read_configuration(const std::filesystem::path& path) {
  TokenReader reader(path);
  std::vector<std::int8_t> spins;
  // The file is a single line of spins; the token count defines N.
  while (!reader.done()) {
    spins.push_back(static_cast<std::int8_t>(reader.next_spin("spin")));
  }
  if (spins.empty()) reader.fail_eof("expected at least one spin");
  return SpinConfiguration::validate(std::move(spins));
}

void write_pattern_matrix(const std::filesystem::path& path, const PatternMatrix& patterns) {
  std::ofstream out = open_for_write(path);
  out << patterns.dimension() << ' ' << patterns.columns() << "\n";
  for (int mu = 0; mu < patterns.dimension(); ++mu) {
    for (int i = 0; i < patterns.columns(); ++i) {
      if (i > 0) out << ' ';
      out << (patterns.entry(mu, i) > 0 ? "+1" : "-1");
    }
    out << "\n";
  }
  finish_write(out, path);
}

PatternMatrix read_pattern_matrix(const std::filesystem::path& path) {
  TokenReader reader(path);
  const long long m = reader.next_int("pattern dimension M");
  const long long n = reader.next_int("column count N");
  if (m < 1 || n < 1) {
    throw Error(ErrorCode::ParseError, reader.path() + ": invalid pattern header");
  }
  PatternMatrix patterns(static_cast<int>(m), static_cast<int>(n));
  for (long long mu = 0; mu < m; ++mu) {
    for (long long i = 0; i < n; ++i) {
      patterns.column(static_cast<int>(i))[mu] =
          static_cast<std::int8_t>(reader.next_spin("pattern entry"));
    }
  }
  reader.expect_done();
  return patterns;
}

std::string configuration_to_string(const SpinConfiguration& config) {
  std::string out;
  for (int i = 0; i < config.size(); ++i) {
    if (i > 0) out += ' ';
    out += config.spin(i) > 0 ? "+1" : "-1";
  }
  return out;
}

void write_fig1_csv(const std::filesystem::path& path, const FrequencyReport& report) {
  std::ofstream out = open_for_write(path);
  out << "matrix,dynamics,deepest_energy,hits,runs,frequency\n";
  for (int m = 0; m < report.matrix_count; ++m) {
    for (int d = 0; d < kDynamicsCount; ++d) {
      const double frequency =
          static_cast<double>(report.hits[m][d]) / report.starts_per_matrix;
      out << m + 1 << ',' << dynamics_name(static_cast<DynamicsKind>(d)) << ','
          << format_double(report.deepest_energy[m]) << ',' << report.hits[m][d] << ','
          << report.starts_per_matrix << ',' << format_double(frequency) << "\n";
    }
  }
  finish_write(out, path);
}

void write_fig2_csv(const std::filesystem::path& path, const DistortionSweepReport& report) {
  std::ofstream out = open_for_write(path);
  out << "b,dynamics,mean_frequency\n";
  for (std::size_t i = 0; i < report.per_b.size(); ++i) {
    for (int d = 0; d < kDynamicsCount; ++d) {
      out << format_double(report.b_values[i]) << ','
          << dynamics_name(static_cast<DynamicsKind>(d)) << ','
          << format_double(report.per_b[i].mean_frequency[d]) << "\n";
    }
  }
  finish_write(out, path);
}

void write_fig3_csv(const std::filesystem::path& path, const RCharacteristicReport& report) {
  std::ofstream out = open_for_write(path);
  out << "b,dynamics,mean_r,defined_runs,undefined_runs\n";
  for (std::size_t i = 0; i < report.b_values.size(); ++i) {
    out << format_double(report.b_values[i]) << ",DM-RND,"
        << format_double(report.dm_rnd[i].mean_r) << ',' << report.dm_rnd[i].defined_runs << ','
        << report.dm_rnd[i].undefined_runs << "\n";
    out << format_double(report.b_values[i]) << ",DM-CLS,"
        << format_double(report.dm_cls[i].mean_r) << ',' << report.dm_cls[i].defined_runs << ','
        << report.dm_cls[i].undefined_runs << "\n";
  }
  finish_write(out, path);
}

void write_table1_csv(const std::filesystem::path& path, const Table1Report& report) {
  std::ofstream out = open_for_write(path);
  out << "b,mean_intragroup_coupling,expected\n";
  for (const Table1Row& row : report.rows) {
    out << format_double(row.distortion) << ',' << format_double(row.mean_coupling) << ','
        << format_double(row.expected) << "\n";
  }
  finish_write(out, path);
}

void write_oracle_csv(const std::filesystem::path& path, const OracleReport& report) {
  std::ofstream out = open_for_write(path);
  out << "kind,energy,configuration\n";
  for (const Minimum& m : report.local_minima) {
    out << "local," << format_double(m.energy) << ',' << configuration_to_string(m.state) << "\n";
  }
  for (const Minimum& m : report.domain_local_minima) {
    out << "domain," << format_double(m.energy) << ',' << configuration_to_string(m.state) << "\n";
  }
  finish_write(out, path);
}

}  // namespace domino::io
