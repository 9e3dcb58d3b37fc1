#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace germext {

enum class CheckStatus { pass, fail, info };

std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::optional<double> measured;
  std::optional<double> bound;
  std::optional<double> tolerance;
};

/// status = pass iff measured <= bound + tolerance.
Check upper_check(std::string name, double measured, double bound, double tolerance = 0.0);

nlohmann::json check_to_json(const Check& c);

struct SuiteParams {
  std::size_t grid_dim = 64;       // C(M) checks
  std::size_t quad_dim = 65;       // integral functional
  std::size_t borel_dim = 8;
  std::size_t cheb_degree = 128;
  double a = 1.0 / 3.0;
  double b = 0.5;
  int jet_order = 4;
  double budget = 1e5;
  double jet_tol = 1e-6;
  std::uint64_t seed = 0;
};

/// Output of one criterion: its checks plus free-form data for the report.
struct SectionResult {
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
};

SectionResult truncator_template(const SuiteParams& p);
SectionResult kmap_certificate(const SuiteParams& p);
SectionResult integral_extension(const SuiteParams& p);
SectionResult derivative_formulas(const SuiteParams& p);
SectionResult borel_lemma(const SuiteParams& p);
SectionResult epsilon_power_law(const SuiteParams& p);
SectionResult ideal_property(const SuiteParams& p);
SectionResult c1_growth(const SuiteParams& p);

struct Section {
  const char* name;
  SectionResult (*run)(const SuiteParams&);
  /// Wall-clock limit in seconds; 0 for none.
  double time_limit;
};

/// The eight acceptance sections in order.
const std::vector<Section>& acceptance_sections();

bool all_pass(const std::vector<Check>& checks);

}  // namespace germext
