#pragma once

// Command-line front end. Subcommands: moment, sweep, expsum, meansquare,
// count, roottwist, lvalue. Data goes to `out` (or --out), diagnostics to `err`.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "tml/error.hpp"

namespace tml::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kBadModulus = 2,
  kNumericalFailure = 3,
};

int exit_code_for(ErrorCode code);

struct RunConfig {
  std::string subcommand;
  std::int64_t a = 1, b = -1;
  std::uint64_t q = 0, qmin = 0, qmax = 0;
  std::string matrix, box, u, pair, poly;
  std::string out_path;
  std::string format = "csv";
  unsigned workers = 1;
  std::uint64_t seed = 0;
  std::string method = "exact";
  std::string test_function = "gauss";
  double x = 0;  // X for the AFE method; 0 means X = q
  std::int64_t j = 0;
  std::uint64_t random = 0;
  bool all = false;
  bool weil = false;
  bool timing = false;
};

/// Workers from TML_WORKERS, or 1 when unset or invalid.
unsigned default_workers();

/// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tml::cli
