#pragma once

// Command-line surface. Parsing is separate from running so the config can
// be round-tripped and echoed into CSV headers.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvwalk::cli {

struct ExperimentConfig {
  std::string subcommand;  // "protocol keygen" etc. for nested commands
  std::size_t n = 0;
  std::uint64_t t = 0;
  double eps = 0.25;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool lazy = false;
  std::string out;
  std::size_t threads = 0;  // 0: available parallelism

  std::uint64_t tmax = 0;  // exact: 0 picks a horizon past the mixing times
  std::size_t k = 1;
  std::size_t points = 41;
  double lo = 0.5;  // cutoff grid, in units of n log n
  double hi = 3.0;
  std::size_t restarts = 16;
  std::size_t iters = 400;
  std::string suite = "all";
  std::size_t d = 8;
  double cls = 0;  // bounds: 0 means estimate it
  double inv_abs_gap = 0;

  std::string key;
  std::string secret;
  std::string challenge;
  std::string response;
  std::uint64_t bit_ops = 0;
  std::uint64_t deadline = 0;
  bool dishonest = false;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Thrown by parse_args. code 0 carries help text, code 2 a diagnostic.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

// args excludes the program name. "--config path" splices key=value lines
// in front of the command-line flags, so explicit flags win.
ExperimentConfig parse_args(const std::vector<std::string>& args);

// Arguments that parse back to the same config.
std::vector<std::string> to_args(const ExperimentConfig& config);
// "tvwalk <args...>", used as the CSV header comment.
std::string echo(const ExperimentConfig& config);

// 0 success or accept, 1 reject (protocol) or violations (check), 2 error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvwalk::cli
