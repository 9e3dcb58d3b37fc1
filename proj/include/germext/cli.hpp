#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "germext/borel.hpp"

namespace germext::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, bad config values, unreadable inputs: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;  // demo-extend | demo-borel | verify | probe-c1
  /// Space dimension; per-command default (65 extend, 8 borel, 64 verify).
  std::optional<std::size_t> d;
  std::size_t D = 128;
  int p = 2;
  double a = 1.0 / 3.0;
  double b = 0.5;
  double rho_in = 0.25;
  double rho_out = 0.5;
  /// Extension radius; defaults to 0.9 of the germ's domain radius.
  std::optional<double> eps;
  double budget = kDefaultBudget;
  /// Jet order; defaults to 4, or to the order of --jet.
  std::optional<int> J;
  std::uint64_t seed = 0;
  /// Overrides the main tolerance of the command.
  std::optional<double> tol;
  std::optional<std::string> out;
  std::optional<std::string> jet;
};

/// Throws UsageError for an unknown command or out-of-range values.
void validate(const RunConfig& cfg);

/// Applies keys of a JSON config object to cfg unless `given(key)` is true.
/// Keys match the flag names: d, D, p, a, b, rho_in, rho_out, eps, budget, J,
/// seed, tol, out, jet, command.
void apply_config(RunConfig& cfg, const nlohmann::json& doc,
                  const std::function<bool(const std::string&)>& given);

nlohmann::json config_to_json(const RunConfig& cfg);

struct RunOutput {
  int exit_code = kExitPass;
  /// {command, params, checks, data, timing}
  nlohmann::json report;
  std::string summary;
};

/// Executes a validated config. Throws UsageError on bad inputs.
RunOutput run(const RunConfig& cfg);

/// Full command line handling: parse, run, write the report and summary.
/// With --out the report goes to the file and the summary to `out`; otherwise
/// the report goes to `out` and the summary to `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace germext::cli
