#include "biham/verify_suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include "checks.hpp"

namespace biham {

std::string_view to_string(Normalization n) {
  return n == Normalization::Relative ? "relative" : "absolute";
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Skipped:
      return "skipped";
    case CheckStatus::Inconclusive:
      return "inconclusive";
    case CheckStatus::Diagnostic:
      return "diagnostic";
  }
  return "fail";
}

int VerificationReport::count(CheckStatus s) const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
}

const CheckResult* VerificationReport::find(std::string_view name) const {
  for (const auto& c : checks)
    if (c.spec.name == name) return &c;
  return nullptr;
}

namespace {

std::vector<detail::CheckDef> registry() {
  std::vector<detail::CheckDef> defs;
  detail::register_general_checks(defs);
  detail::register_symmetric_checks(defs);
  std::sort(defs.begin(), defs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return defs;
}

bool selected(const std::string& name, const std::vector<std::string>& filter) {
  if (filter.empty()) return true;
  return std::any_of(filter.begin(), filter.end(),
                     [&](const std::string& f) { return name.rfind(f, 0) == 0; });
}

CheckResult run_one(const detail::CheckDef& def, const ModelParams& params,
                    const std::optional<SymmetricParams>& sym, const SuiteOptions& opt) {
  CheckResult r;
  r.spec = {def.name, def.tolerance * opt.tol_scale, opt.points, def.normalization};
  if (def.scope == detail::Scope::Symmetric && !sym) {
    r.status = CheckStatus::Skipped;
    r.note = "symmetric-only check (mu4 != mu3)";
    return r;
  }
  const detail::CheckContext ctx{params, sym, opt.points, derive_seed(opt.seed, def.name)};
  detail::CheckOutcome out;
  try {
    out = def.run(ctx);
  } catch (const std::exception& e) {
    r.status = CheckStatus::Fail;
    r.max_residual = std::numeric_limits<double>::infinity();
    r.note = std::string("error: ") + e.what();
    return r;
  }
  r.max_residual = out.max_residual;
  r.n_evaluated = out.evaluated;
  r.n_skipped_degenerate = out.skipped;
  r.note = out.note;
  r.diagnostics = std::move(out.diagnostics);
  if (out.force_skip) {
    r.status = CheckStatus::Skipped;
  } else if (def.diagnostic) {
    r.status = CheckStatus::Diagnostic;
  } else if (out.skipped > kMaxSkipFraction * (out.skipped + out.evaluated)) {
    r.status = CheckStatus::Inconclusive;
    r.note = "more than 5% of points skipped as degenerate";
  } else {
    r.status = std::isfinite(r.max_residual) && r.max_residual <= r.spec.tolerance
                   ? CheckStatus::Pass
                   : CheckStatus::Fail;
  }
  return r;
}

double diag(const VerificationReport& rep, std::string_view check, std::string_view key) {
  if (const CheckResult* c = rep.find(check))
    for (const auto& [k, v] : c->diagnostics)
      if (k == key) return v;
  return std::nan("");
}

void add_resolutions(VerificationReport& rep) {
  auto& out = rep.resolutions;
  out.push_back({"h2_last_term",
                 "The last term of H2 is read as -2 mu3^2 (z1 - z2)^2; it matches KE "
                 "transported from the m-chart (check uv.observable_transport).",
                 {}});
  out.push_back({"uv_tensor_normalization",
                 "The printed uv tensors equal (i/sqrt 2) A P_m A^T for the linear chart "
                 "matrix A (check uv.tensor_transport).",
                 {}});
  out.push_back({"q_casimirs",
                 "H0 and C2 are Casimirs of Q; H1 is not (check uv.q_casimirs).",
                 {{"h1_casimir_residual_min", diag(rep, "uv.q_casimirs", "h1_casimir_residual_min")}}});
  out.push_back({"xi2_sign",
                 "The Lie-derivative quotient gives xi2 = +L / (mu3 u1 u2 G F), fixed by "
                 "{lambda2, xi2}_P = +1; the printed closed form has the opposite sign.",
                 {{"printed_closed_form_matches",
                   diag(rep, "deformation.xi2", "printed_closed_form_matches")}}});
  out.push_back({"phi2_psi_sign",
                 "Phi2 vanishes with Psi = -(lambda2^2 H0 - mu3 F G C2); the printed sign of "
                 "Psi leaves an O(1) residual.",
                 {{"printed_psi_residual_min", diag(rep, "separation.phi2", "printed_psi_residual_min")}}});
  out.push_back({"g_relation",
                 "G^2 = ((lambda2 - mu1 + mu2)/mu3)^2 - 4; the printed '4 +' is a sign slip.",
                 {{"printed_g_relation_residual_min",
                   diag(rep, "leaf.aux_relations", "printed_g_relation_residual_min")}}});
  out.push_back({"eigenform_convention",
                 "The printed N* acts on gradient column vectors (u1, z1, u2, z2) directly; "
                 "no transpose is applied.",
                 {}});
  out.push_back({"lax_partner",
                 "B = Omega + lambda J is the Lax partner of the flow of "
                 "H_Omega = 1/2 sum m_ij^2/(J_i + J_j), which lies in span{H0, HE, KE}. Along "
                 "the HE flow the partner is B = A.M + lambda diag(S J_i^2 - J_i^4). Both "
                 "satisfy dL/dt = [B, L].",
                 {{"rigid_body_minus_sign_points", diag(rep, "m.lax_rigid_body", "sign_minus_count")},
                  {"euler_he_minus_sign_points", diag(rep, "m.lax_euler_he", "sign_minus_count")}}});
  out.push_back({"generalized_lenard",
                 "On the leaf Q dH1 = P dH2 + c P dH1 holds with c = p1 (sum of the N* "
                 "eigenvalues); reported as a diagnostic.",
                 {{"fitted_c_minus_p1sum_max",
                   diag(rep, "leaf.generalized_lenard", "fitted_c_minus_p1sum_max")}}});
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& d : registry()) names.push_back(d.name);
  return names;
}

VerificationReport run_suite(const ModelParams& params, const SuiteOptions& options) {
  if (options.points < 1) fail(ErrorKind::InvalidArgument, "points must be >= 1");
  if (!(options.tol_scale > 0.0)) fail(ErrorKind::InvalidArgument, "tol_scale must be positive");
  for (double m : params.mu())
    if (!std::isfinite(m)) fail(ErrorKind::InvalidArgument, "parameters must be finite");

  std::optional<SymmetricParams> sym;
  if (params.is_symmetric()) {
    sym = SymmetricParams{params.mu()[0], params.mu()[1], params.mu()[2], options.mutation};
    sym->validate();
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::vector<detail::CheckDef> defs;
  for (auto& d : registry())
    if (selected(d.name, options.filter)) defs.push_back(std::move(d));

  VerificationReport rep;
  rep.seed = options.seed;
  rep.params = params;
  rep.options = options;
  rep.checks.resize(defs.size());

  const int workers = std::clamp(options.threads, 1, std::max(1, static_cast<int>(defs.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < defs.size(); i = next++)
      rep.checks[i] = run_one(defs[i], params, sym, options);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) {
    return c.status == CheckStatus::Pass || c.status == CheckStatus::Skipped ||
           c.status == CheckStatus::Diagnostic;
  });
  add_resolutions(rep);
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace biham
