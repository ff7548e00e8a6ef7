#ifndef DDELTA_CLI_HPP
#define DDELTA_CLI_HPP

// Command-line front end. Exit codes: 0 success, 1 a requested check failed,
// 2 invalid input or usage.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ddelta/model.hpp"
#include "ddelta/oracle.hpp"
#include "ddelta/quadrature.hpp"

namespace ddelta {

enum class Command { Spectrum, Wavefn, Curves, Verify, LimitStudy, Integrals };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Spectrum;
  std::vector<double> a_values;             // --a (repeatable only for curves)
  std::optional<PhysicalParams> physical;  // set when any physical flag is given
  Format format = Format::Csv;
  std::string output;  // empty: stdout
  std::uint64_t seed = 1;

  double xi_max = 4.0;  // curves
  int n = 401;
  std::vector<double> thetas{0.4, 0.2, 0.1, 0.05, 0.025};  // limit-study
  double x_min = -4.0;  // wavefn
  double x_max = 4.0;
  int samples = 161;
  int cases = 20;  // integrals: random cases per table entry and branch

  QuadratureSpec quad{};
  GridSpec grid{};
};

struct ParseResult {
  std::optional<RunConfig> config;  // empty when parsing stopped early
  int status = kExitOk;             // exit code when config is empty
  std::string message;              // usage, help or error text
};

ParseResult parse_flags(int argc, const char* const* argv);

/// Runs one command, writing its table to out and diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_flags + run, honouring --output.
int cli_main(int argc, const char* const* argv);

}  // namespace ddelta

#endif  // DDELTA_CLI_HPP
