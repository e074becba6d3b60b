#pragma once

// The verification campaign: runs the configured checks over the corpus,
// fits constants and writes one CSV per statement plus summary.json.

#include <cstddef>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpa/checks.hpp"
#include "vpa/config.hpp"

namespace vpa {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // bad arguments or unknown names
  kExitConfig = 2,         // config could not be parsed or validated
  kExitCheckFailure = 3,   // an explicit-constant check failed or an anomaly was found
  kExitSolverFailure = 4,  // a best-approximation solver did not converge
};

struct CampaignResult {
  std::map<Statement, std::vector<InequalityReport>> reports;
  std::map<Statement, FitResult> fits;        // over the whole grid
  std::map<Statement, FitResult> fits_small;  // over n <= fit_split
  std::vector<std::string> solver_failures;
  std::size_t direct_failures = 0;  // windows the direct solver could not handle
  std::size_t explicit_failures = 0;
  std::size_t anomalies = 0;

  int exit_code() const;
  nlohmann::json summary(const RunConfig& c) const;
};

/// Grid points -pi + 2 pi (i + 1/2) / count, moved to the nearest node of
/// an n-point grid.
std::vector<double> centre_points(std::size_t count, std::size_t n);

/// mu values used for the tau difference bound: {1, m/4, m/2} with
/// 1 <= mu and 2 mu <= m, ascending and distinct.
std::vector<std::size_t> mu_values(std::size_t m);

/// Runs every configured statement. Progress goes to `log` when non-null.
CampaignResult run_campaign(const RunConfig& c, std::ostream* log = nullptr);

/// Writes <ID>.csv per statement with reports and summary.json into `dir`,
/// each file atomically. Nothing is written when no statement is selected.
void write_campaign(const CampaignResult& result, const RunConfig& c, const std::filesystem::path& dir);

}  // namespace vpa
