// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Usage: biham_acceptance <path to biham-euler> <report output path>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "biham/dynamics.hpp"
#include "biham/report.hpp"
#include "biham/sampling.hpp"
#include "biham/verify_suite.hpp"
#include "schema_validator.hpp"

namespace {

using namespace biham;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

/// Runs the named checks and requires each to pass with max_residual <= limit.
Outcome suite_criterion(const std::vector<std::string>& names, int points, double limit) {
  SuiteOptions opt;
  opt.points = points;
  opt.seed = 42;
  opt.filter = names;
  const VerificationReport rep = run_suite(ModelParams::symmetric(1, 2, 3), opt);
  Outcome o;
  double worst = 0.0;
  for (const std::string& name : names) {
    const CheckResult* c = rep.find(name);
    if (!c) {
      o.pass = false;
      o.detail += " missing " + name + ";";
      continue;
    }
    worst = std::max(worst, c->max_residual);
    if (c->status != CheckStatus::Pass || !(c->max_residual <= limit)) {
      o.pass = false;
      o.detail += " " + name + "=" + sci(c->max_residual) + " [" +
                  std::string(to_string(c->status)) + "];";
    }
  }
  o.detail = "max residual " + sci(worst) + " (limit " + sci(limit) + ")" + o.detail;
  return o;
}

Outcome dynamics_criterion() {
  const ModelParams top = ModelParams::symmetric(10, 1, 2);
  Sampler s(42);
  RealState m0{};
  for (double& v : m0) v = s.real();
  const Trajectory a = integrate(top, m0, {1e-3, 10.0, 100});
  const Trajectory b = integrate(top, m0, {5e-4, 10.0, 100});
  Outcome o;
  double worst = 0.0;
  for (double d : a.drift) worst = std::max(worst, d);
  const double ratio = a.drift[2] / b.drift[2];
  o.pass = !a.aborted && worst <= 1e-8 && ratio >= 11.0 && ratio <= 22.0;
  o.detail = "max drift " + sci(worst) + " (limit 1.00e-08), HE drift ratio dt/(dt/2) " +
             std::to_string(ratio) + " (range [11, 22])";
  return o;
}

Outcome mutation_criterion() {
  Outcome o;
  o.detail = "worst failing residual per mutation:";
  for (Mutation m : {Mutation::QWedgeSign, Mutation::H2LastTermSign, Mutation::NStarEntrySign}) {
    SuiteOptions opt;
    opt.points = 20;
    opt.seed = 42;
    opt.mutation = m;
    const VerificationReport rep = run_suite(ModelParams::symmetric(1, 2, 3), opt);
    double worst = 0.0;
    std::string where = "none";
    for (const CheckResult& c : rep.checks)
      if (c.status == CheckStatus::Fail && c.max_residual > worst) {
        worst = c.max_residual;
        where = c.spec.name;
      }
    o.pass = o.pass && worst > 1e-3;
    o.detail += " " + std::string(to_string(m)) + " -> " + where + " " + sci(worst) + ";";
  }
  return o;
}

Outcome end_to_end_criterion(const std::string& cli, const std::string& report) {
  Outcome o;
  std::remove(report.c_str());
  const std::string cmd = "\"" + cli + "\" verify --mu 1,2,3 --points 100 --seed 42 --report \"" +
                          report + "\" > /dev/null";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.pass = code == 0;
  o.detail = "exit code " + std::to_string(code);
  try {
    const auto errors =
        test::validate(test::load_json(report), test::load_json(BIHAM_SCHEMA_PATH));
    o.pass = o.pass && errors.empty();
    o.detail += errors.empty() ? ", report validates against schema"
                               : ", schema errors: " + std::to_string(errors.size()) + " (first: " +
                                     errors.front() + ")";
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail += std::string(", report unreadable: ") + e.what();
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <biham-euler> <report.json>\n", argv[0]);
    return 2;
  }
  struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "structural identities", 5.0,
       [] {
         return suite_criterion({"m.jacobi_p1", "m.jacobi_p2", "m.compat_p1_p2", "uv.jacobi_p1",
                                 "uv.jacobi_p2", "uv.jacobi_q", "uv.compat_p1_p2", "uv.compat_p1_q"},
                                50, 1e-11);
       }},
      {2, "Lenard chain and common Casimirs", 1.0,
       [] { return suite_criterion({"m.lenard_chain", "m.lenard_casimirs"}, 50, 1e-12); }},
      {3, "characteristic polynomial identity", 1.0,
       [] { return suite_criterion({"m.char_poly"}, 100, 1e-10); }},
      {4, "transversality and Staeckel condition", 0.0,
       [] {
         Outcome a = suite_criterion({"uv.transversality", "uv.lz_p2_rank"}, 50, 1e-12);
         const Outcome b = suite_criterion({"uv.stackel"}, 50, 1e-9);
         return Outcome{a.pass && b.pass, a.detail + "; stackel " + b.detail};
       }},
      {5, "Nijenhuis operator and DN chart", 0.0,
       [] {
         const Outcome a = suite_criterion({"leaf.nijenhuis_closed_form"}, 50, 1e-12);
         const Outcome b = suite_criterion({"leaf.nijenhuis_spectrum", "dn.eigenforms"}, 50, 1e-9);
         const Outcome c = suite_criterion({"dn.canonical_p", "dn.canonical_q"}, 50, 1e-10);
         return Outcome{a.pass && b.pass && c.pass,
                        "closed form " + a.detail + "; spectrum/eigenforms " + b.detail +
                            "; canonical brackets " + c.detail};
       }},
      {6, "deformation pipeline", 0.0,
       [] {
         return suite_criterion(
             {"deformation.factorization", "deformation.termination", "deformation.xi2"}, 50, 1e-10);
       }},
      {7, "separation relations", 0.0,
       [] {
         const Outcome a = suite_criterion({"separation.phi1"}, 100, 1e-12);
         const Outcome b = suite_criterion({"separation.phi2"}, 100, 1e-9);
         return Outcome{a.pass && b.pass, "phi1 " + a.detail + "; phi2 " + b.detail};
       }},
      {8, "RK4 dynamics drift and order", 10.0, dynamics_criterion},
      {9, "mutation sensitivity", 10.0, mutation_criterion},
      {10, "end-to-end verify run and report schema", 60.0,
       [&] { return end_to_end_criterion(argv[1], argv[2]); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    const bool in_time = c.time_limit <= 0.0 || t < c.time_limit;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::string timing = "runtime " + sci(t) + " s";
    if (c.time_limit > 0.0) timing += " (limit " + sci(c.time_limit) + " s)";
    std::printf("criterion %2d %-42s %s  %s; %s\n", c.id, c.title, pass ? "PASS" : "FAIL",
                o.detail.c_str(), timing.c_str());
  }
  std::printf("acceptance: %d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
