#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "biham/so4_top.hpp"
#include "biham/xxz_model.hpp"

namespace biham {

enum class Normalization { Relative, Absolute };
std::string_view to_string(Normalization n);

/// Outcome of a single named check.
///  - Diagnostic: measured and reported, never part of the overall verdict.
///  - Inconclusive: more than 5% of the sampled points hit a degeneracy guard.
enum class CheckStatus { Pass, Fail, Skipped, Inconclusive, Diagnostic };
std::string_view to_string(CheckStatus s);

struct CheckSpec {
  std::string name;
  double tolerance = 1e-12;
  int n_points = 50;
  Normalization normalization = Normalization::Relative;
};

struct CheckResult {
  CheckSpec spec;
  double max_residual = 0.0;  ///< normalized |r| / (1 + s), or |r| for Absolute checks
  int n_evaluated = 0;
  int n_skipped_degenerate = 0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool pass() const { return status == CheckStatus::Pass; }
};

/// A discrepancy in the published formulas and how it was settled, with the
/// measured evidence from this run when there is one.
struct Resolution {
  std::string topic;
  std::string finding;
  std::vector<std::pair<std::string, double>> evidence;
};

struct SuiteOptions {
  int points = 50;
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
  int threads = 1;
  Mutation mutation = Mutation::None;
  /// Run only checks whose name starts with one of these prefixes (all if empty).
  std::vector<std::string> filter;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  ModelParams params;
  SuiteOptions options;
  std::vector<CheckResult> checks;  ///< ordered by name
  std::vector<Resolution> resolutions;
  bool overall = false;  ///< every non-skipped, non-diagnostic check passed
  double elapsed_seconds = 0.0;

  int count(CheckStatus s) const;
  const CheckResult* find(std::string_view name) const;
};

/// Runs the check registry. Symmetric-only checks are reported as skipped
/// when mu4 != mu3. Throws Degenerate for invalid symmetric parameters
/// (e.g. "degenerate constant eigenvalue") before any check runs.
VerificationReport run_suite(const ModelParams& params, const SuiteOptions& options = {});

/// Names of every registered check, in report order.
std::vector<std::string> check_names();

/// Fraction of skipped points above which a check is inconclusive.
inline constexpr double kMaxSkipFraction = 0.05;

}  // namespace biham
