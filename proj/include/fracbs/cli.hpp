#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracbs/model.hpp"

namespace fracbs::cli {

/// Bad flag, config key or value; the message names the offending key.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumerical = 3,
  kIo = 4,
};

/// Fully resolved run configuration.  Every key maps to a flag of the same
/// name (`--alpha`, `--n`, ...) and to a `key=value` line of a config file.
struct RunConfig {
  std::string command = "price";
  MarketParams market;
  GridSpec grid;
  /// `theta=optimal` keeps this set; `theta` then holds optimal_theta(alpha).
  bool theta_optimal = false;
  double theta = 0.5;

  std::int64_t mc_samples = 100000;
  std::uint64_t seed = 12345;
  bool antithetic = false;
  unsigned threads = 1;

  std::string output;  // directory for artifacts; empty writes none
  std::string format = "csv";
  bool forward_boundary = false;
  bool verbose = false;

  // Study parameters.
  std::string variable = "time";
  std::vector<double> alphas;
  std::vector<double> maturities;
  std::vector<double> strikes;
  std::vector<double> thetas;
  std::string grids;

  bool operator==(const RunConfig&) const = default;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"price",    "bs",         "mc-compare", "stability",
                                              "converge", "error-grid", "alpha-sweep"};
  return names;
}

/// Environment variable naming the artifact directory when --output is absent.
inline constexpr const char* kOutputDirEnv = "FRACBS_OUTPUT_DIR";

/// Parses flags and an optional `--config <file>`; flags win over file keys.
/// Command-specific defaults are filled in and `theta=optimal` resolved.
/// Throws UsageError.  On `--help` the help text is stored in `*help_text`
/// and a default config is returned.
RunConfig parse_config(int argc, const char* const* argv, std::string* help_text = nullptr);

/// `key=value` lines that parse back to the same RunConfig.
std::vector<std::string> echo_config(const RunConfig& cfg);

/// Extracts the echoed configuration from the comment preamble of a CSV
/// artifact, as config-file text.
std::string config_from_preamble(const std::string& csv_text);

/// Runs the command.  Tables go to `out`, warnings and errors to `err`.
/// Returns one of ExitCode.
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config + dispatch with the exit-status contract applied.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracbs::cli
