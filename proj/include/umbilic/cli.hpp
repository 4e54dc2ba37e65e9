#pragma once

// Commands behind the cr_umbilic executable. Each writes CSV or JSON to the
// output path (stdout when empty) and returns the process exit code.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace umbilic {

enum class Command { Invariants, Locus, Trace, Verify };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Bumped whenever a column or JSON key changes.
inline constexpr int kFormatVersion = 1;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::Invariants;
  double a = 0.0;
  double b = 0.0;
  int grid = 100;        ///< invariants: n x n chart grid
  int samples = 0;       ///< locus: points per curve (720); verify: points per pair (1000); 0 = default
  double tol = 1e-11;    ///< trace: Newton residual tolerance
  int seed_grid = 24;    ///< trace
  double step = 0.02;    ///< trace: arclength step
  std::string output_path;
  Format format = Format::Csv;
  std::vector<std::string> suites;  ///< verify: empty = all
  bool inject_sign_error = false;   ///< verify negative control (library use only)

  /// Throws UsageError for out-of-range values, including the ellipsoid
  /// parameter constraints 0 <= b <= a <= 1 - 1e-9.
  void validate() const;
};

Command parse_command(const std::string& s);
Format parse_format(const std::string& s);

/// `data` receives the document when output_path is empty; `log` gets
/// notices and the verify table.
int cmd_invariants(const RunConfig& cfg, std::ostream& data, std::ostream& log);
int cmd_locus(const RunConfig& cfg, std::ostream& data, std::ostream& log);
int cmd_trace(const RunConfig& cfg, std::ostream& data, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& data, std::ostream& log);

/// Validates, dispatches and maps exceptions onto exit codes.
int run_command(const RunConfig& cfg, std::ostream& data, std::ostream& log);

/// Minimal CSV reader for the files written above: skips '#' lines, returns
/// the header and the rows as strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;
};
CsvTable read_csv(std::istream& in);

}  // namespace umbilic
