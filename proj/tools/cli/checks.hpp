#ifndef POMPEIU_CLI_CHECKS_HPP
#define POMPEIU_CLI_CHECKS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pompeiu/json_io.hpp"

namespace pompeiu::cli {

struct CheckOptions {
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

struct CheckResult {
  std::string name;
  std::string title;
  bool passed = true;
  double seconds = 0.0;           ///< wall time, kept out of the JSON report
  std::vector<std::string> failures;
  io::Json details = io::Json::object();
};

/// Names accepted by `demo --only`, in run order.
const std::vector<std::string>& check_names();

/// Throws std::invalid_argument for an unknown name.
CheckResult run_check(std::string_view name, const CheckOptions& options);

/// Runs `only` (or every check when empty) in canonical order.
std::vector<CheckResult> run_checks(std::span<const std::string> only, const CheckOptions& options);

io::Json to_json(const CheckResult& result);

}  // namespace pompeiu::cli

#endif  // POMPEIU_CLI_CHECKS_HPP
