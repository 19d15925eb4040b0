#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "btu/collineation.hpp"
#include "btu/feet.hpp"
#include "btu/field.hpp"

namespace btu {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum class SuiteStatus { pass, fail, skipped };
std::string to_string(SuiteStatus s);

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::skipped;
  Json payload = Json::object();
  Json witnesses = Json::array();
  std::string note;
  double runtime_ms = 0;
};

struct RunOptions {
  int e = 1;
  unsigned threads = 0;
  std::uint64_t budget = 0;  // stabiliser candidate budget, 0 = unlimited
  bool all_points = false;   // spectrum over every admissible point
  bool semilinear = false;   // stabiliser over the semilinear flag group
  bool force = false;        // allow the stabiliser scan at e >= 2
  std::string checkpoint;    // stabiliser checkpoint file
  std::uint64_t shard_limit = 0;
};

struct VerificationReport {
  std::string command;
  RunOptions options;
  std::uint32_t q = 0;
  int degree = 0;
  std::string modulus, epsilon, delta;  // lowercase hex
  std::vector<SuiteResult> suites;      // every known suite, in suite_names() order
  Json reproducibility = Json::object();
  double runtime_ms = 0;
  std::optional<SpectrumReport> spectrum;
  std::optional<GroupCensus> census;

  bool failed() const;
  const SuiteResult& suite(const std::string& name) const;
};

/// All suites, in report order.
const std::vector<std::string>& suite_names();
/// Subcommands accepted by run_suites.
const std::vector<std::string>& subcommands();
/// Suites run by a subcommand; throws std::invalid_argument for an unknown subcommand.
std::vector<std::string> suites_for(const std::string& subcommand);

/// Runs the suites of a subcommand. BudgetExceeded from the stabiliser scan propagates when the
/// subcommand is "stabilizer"; under "all" it marks the suite skipped.
VerificationReport run_suites(const std::string& subcommand, const RunOptions& opt);

/// Suites not selected are listed with status "skipped". Runtime fields are the only
/// nondeterministic values; with_runtime = false zeroes them.
Json to_json(const VerificationReport& r, bool with_runtime = true);

/// point_rep_a,point_rep_b,k0,...,k4 with hex representatives.
std::string spectrum_csv(const SpectrumReport& s);
/// order,elements.
std::string census_csv(const GroupCensus& c);

Json hex_triple(const Triple& t);

}  // namespace btu
