#pragma once

// Internal registry interface shared by the check translation units.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biham/error.hpp"
#include "biham/leaf_sov.hpp"
#include "biham/sampling.hpp"
#include "biham/verify_suite.hpp"

namespace biham::detail {

struct CheckContext {
  const ModelParams& model;
  std::optional<SymmetricParams> sym;  ///< set iff mu4 == mu3
  int n = 50;
  std::uint64_t seed = 0;  ///< already derived from the check name
};

struct CheckOutcome {
  double max_residual = 0.0;
  int evaluated = 0;
  int skipped = 0;
  std::string note;
  std::vector<std::pair<std::string, double>> diagnostics;
  bool force_skip = false;  ///< whole check not applicable (note says why)

  void take(double r) {
    max_residual = std::max(max_residual, r);
    ++evaluated;
  }
  void take(const Residual& r) { take(r.normalized()); }
  void diag(std::string key, double value) { diagnostics.emplace_back(std::move(key), value); }
};

enum class Scope { General, Symmetric };

struct CheckDef {
  std::string name;
  double tolerance = 1e-12;
  Normalization normalization = Normalization::Relative;
  Scope scope = Scope::General;
  bool diagnostic = false;
  std::function<CheckOutcome(const CheckContext&)> run;
};

void register_general_checks(std::vector<CheckDef>& out);
void register_symmetric_checks(std::vector<CheckDef>& out);

/// Run `body(i)` for i < n, counting Degenerate errors as skipped points.
template <class Body>
CheckOutcome over_points(int n, Body&& body) {
  CheckOutcome out;
  for (int i = 0; i < n; ++i) {
    try {
      body(i, out);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Degenerate) throw;
      ++out.skipped;
    }
  }
  return out;
}

/// Complex point with re/im parts uniform in [-1, 1].
Point random_complex_point(Sampler& s, Chart chart);
Point random_real_m(Sampler& s);

}  // namespace biham::detail
