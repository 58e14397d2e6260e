#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "biham/dynamics.hpp"
#include "biham/error.hpp"
#include "biham/leaf_sov.hpp"
#include "biham/report.hpp"
#include "biham/sampling.hpp"
#include "biham/verify_suite.hpp"
#include "json.hpp"

namespace biham::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_count(const std::string& flag, const std::string& text,
                                std::initializer_list<std::size_t> counts) {
  std::vector<double> v;
  try {
    v = parse_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
  for (std::size_t c : counts)
    if (v.size() == c) return v;
  std::string want;
  for (std::size_t c : counts) want += (want.empty() ? "" : " or ") + std::to_string(c);
  throw UsageError(flag + ": expected " + want + " comma-separated numbers, got " +
                   std::to_string(v.size()));
}

ModelParams parse_mu(const std::string& text) {
  const auto v = parse_count("--mu", text, {3, 4});
  if (v.size() == 3) return ModelParams::symmetric(v[0], v[1], v[2]);
  return ModelParams::from_mu(v[0], v[1], v[2], v[3]);
}

SymmetricParams parse_symmetric(const std::string& text) {
  const ModelParams p = parse_mu(text);
  if (!p.is_symmetric()) throw UsageError("--mu: this command requires mu4 == mu3");
  SymmetricParams s{p.mu()[0], p.mu()[1], p.mu()[2]};
  s.validate();
  return s;
}

cplx parse_complex(const std::string& flag, const std::string& text) {
  const auto v = parse_count(flag, text, {2});
  return {v[0], v[1]};
}

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fmt(cplx z) {
  std::ostringstream s;
  s.precision(17);
  s << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

nlohmann::ordered_json pair_json(cplx z) { return {z.real(), z.imag()}; }

// -- subcommands ------------------------------------------------------------------------------

struct VerifyArgs {
  std::string mu;
  int points = 50;
  std::uint64_t seed = 42;
  std::string report;
  double tol_scale = 1.0;
  int threads = 1;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.points < 1) throw UsageError("--points must be >= 1");
  if (!(a.tol_scale > 0.0)) throw UsageError("--tol-scale must be positive");
  if (a.threads < 1) throw UsageError("--threads must be >= 1");
  SuiteOptions opt;
  opt.points = a.points;
  opt.seed = a.seed;
  opt.tol_scale = a.tol_scale;
  opt.threads = a.threads;
  const VerificationReport rep = run_suite(parse_mu(a.mu), opt);
  if (!a.report.empty()) write_report(rep, a.report);
  out << summary_table(rep);
  return rep.overall ? kExitOk : kExitFailure;
}

struct IntegrateArgs {
  std::string mu;
  std::string m0;
  std::uint64_t seed = 42;
  double dt = 1e-3;
  double t_end = 10.0;
  int every = 100;
  std::string out;
};

int cmd_integrate(const IntegrateArgs& a, std::ostream& out) {
  const ModelParams params = parse_mu(a.mu);
  RealState m0{};
  if (a.m0.empty()) {
    Sampler s(a.seed);
    for (double& v : m0) v = s.real();
  } else {
    const auto v = parse_count("--m0", a.m0, {6});
    std::copy(v.begin(), v.end(), m0.begin());
  }
  IntegrateOptions opt;
  opt.dt = a.dt;
  opt.t_end = a.t_end;
  opt.record_every = a.every;
  if (!(opt.dt > 0.0) || !std::isfinite(opt.dt)) throw UsageError("--dt must be positive");
  if (!(opt.t_end > 0.0) || !std::isfinite(opt.t_end)) throw UsageError("--t-end must be positive");
  if (opt.record_every < 1) throw UsageError("--every must be >= 1");

  const Trajectory tr = integrate(params, m0, opt);
  if (!a.out.empty()) {
    std::ofstream csv(a.out);
    if (!csv) throw UsageError("cannot write '" + a.out + "'");
    csv << "t,m12,m13,m14,m23,m24,m34,H0,C,HE,KE,zeta1\n";
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
      csv << fmt(tr.times[i]);
      for (double v : tr.states[i]) csv << ',' << fmt(v);
      for (double v : tr.invariant_series[i]) csv << ',' << fmt(v);
      csv << '\n';
    }
  }
  if (tr.aborted) {
    out << "integration aborted: non-finite state at t = " << fmt(tr.times.back()) << '\n';
    return kExitFailure;
  }
  out << "max relative drift: H0=" << fmt(tr.drift[0]) << " C=" << fmt(tr.drift[1])
      << " HE=" << fmt(tr.drift[2]) << " KE=" << fmt(tr.drift[3])
      << " zeta1=" << fmt(tr.drift[4]) << '\n';
  return kExitOk;
}

struct DnArgs {
  std::string mu, leaf, h0, c2;
  bool json = false;
};

int cmd_dn(const DnArgs& a, std::ostream& out) {
  const SymmetricParams p = parse_symmetric(a.mu);
  const auto v = parse_count("--leaf", a.leaf, {8});
  LeafChart leaf;
  for (std::size_t k = 0; k < 4; ++k) leaf.coords[k] = {v[2 * k], v[2 * k + 1]};
  leaf.h0 = parse_complex("--h0", a.h0);
  leaf.c2 = parse_complex("--c2", a.c2);

  const DNChart dn = dn_chart(p, leaf);
  const Mat rp = dn_brackets(p, leaf, false) - dn_canonical(p, leaf, false);
  const Mat rq = dn_brackets(p, leaf, true) - dn_canonical(p, leaf, true);

  if (a.json) {
    nlohmann::ordered_json j;
    j["zeta1"] = pair_json(dn.zeta1);
    j["xi1"] = pair_json(dn.xi1);
    j["lambda2"] = pair_json(dn.lambda2);
    j["xi2"] = pair_json(dn.xi2);
    j["lambda1"] = p.lambda1();
    auto abs_matrix = [](const Mat& m) {
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(std::abs(m(i, k)));
        rows.push_back(row);
      }
      return rows;
    };
    j["bracket_residual_p"] = abs_matrix(rp);
    j["bracket_residual_q"] = abs_matrix(rq);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "zeta1   = " << fmt(dn.zeta1) << '\n'
      << "xi1     = " << fmt(dn.xi1) << "  (principal log branch)\n"
      << "lambda2 = " << fmt(dn.lambda2) << '\n'
      << "xi2     = " << fmt(dn.xi2) << '\n'
      << "canonical bracket residual |{f_a, f_b}_P - J_ab| (zeta1, xi1, lambda2, xi2):\n";
  char line[128];
  for (int i = 0; i < 4; ++i) {
    std::snprintf(line, sizeof line, "  %10.3e %10.3e %10.3e %10.3e\n", std::abs(rp(i, 0)),
                  std::abs(rp(i, 1)), std::abs(rp(i, 2)), std::abs(rp(i, 3)));
    out << line;
  }
  return kExitOk;
}

struct SeparationArgs {
  std::string mu, uv;
};

int cmd_separation(const SeparationArgs& a, std::ostream& out) {
  const SymmetricParams p = parse_symmetric(a.mu);
  const auto v = parse_count("--uv", a.uv, {12});
  std::array<cplx, 6> c{};
  for (std::size_t k = 0; k < 6; ++k) c[k] = {v[2 * k], v[2 * k + 1]};
  const Point pt = make_point(Chart::UV, c);
  require_nondegenerate_u(c[0], c[3]);
  const SeparationResult r1 = separation_phi1(p, pt);
  out << "Phi1 = " << fmt(r1.phi1) << "  normalized " << fmt(r1.phi1_residual.normalized()) << '\n';
  // Phi2 needs the separation chart (G, F != 0); Phi1 does not.
  try {
    const SeparationResult r = separation_residuals(p, pt);
    out << "Phi2 = " << fmt(r.phi2) << "  normalized " << fmt(r.phi2_residual.normalized())
        << '\n';
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    out << "Phi2 = n/a (" << e.what() << ")\n";
  }
  return kExitOk;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(',', start);
    std::string tok = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (!tok.empty() && tok.front() == '+') tok.erase(0, 1);
    double value = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size() ||
        !std::isfinite(value))
      throw std::invalid_argument("malformed number '" + tok + "'");
    out.push_back(value);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bihamiltonian separation of variables for the symmetric SO(4) Euler top"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run the identity-check suite");
  verify->add_option("--mu", va.mu, "mu1,mu2,mu3[,mu4]")->required();
  verify->add_option("--points", va.points, "points per check");
  verify->add_option("--seed", va.seed, "RNG seed");
  verify->add_option("--report", va.report, "JSON report path");
  verify->add_option("--tol-scale", va.tol_scale, "multiplier on every tolerance");
  verify->add_option("--threads", va.threads, "worker threads");

  IntegrateArgs ia;
  auto* integ = app.add_subcommand("integrate", "RK4 integration of the Euler flow");
  integ->add_option("--mu", ia.mu, "mu1,mu2,mu3[,mu4]")->required();
  integ->add_option("--m0", ia.m0, "six reals m12,...,m34 (default: seeded random)");
  integ->add_option("--seed", ia.seed, "seed for the default m0");
  integ->add_option("--dt", ia.dt, "step size");
  integ->add_option("--t-end", ia.t_end, "final time");
  integ->add_option("--every", ia.every, "record every N steps");
  integ->add_option("--out", ia.out, "CSV output path");

  DnArgs da;
  auto* dn = app.add_subcommand("dn", "Darboux-Nijenhuis coordinates at a leaf point");
  dn->add_option("--mu", da.mu, "mu1,mu2,mu3")->required();
  dn->add_option("--leaf", da.leaf, "u1re,u1im,z1re,z1im,u2re,u2im,z2re,z2im")->required();
  dn->add_option("--h0", da.h0, "re,im")->required();
  dn->add_option("--c2", da.c2, "re,im")->required();
  dn->add_flag("--json", da.json, "emit JSON");

  SeparationArgs sa;
  auto* sep = app.add_subcommand("separation", "separation relations at a uv point");
  sep->add_option("--mu", sa.mu, "mu1,mu2,mu3")->required();
  sep->add_option("--uv", sa.uv, "12 reals: (re,im) of u1,v1,z1,u2,v2,z2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(va, out);
    if (*integ) return cmd_integrate(ia, out);
    if (*dn) return cmd_dn(da, out);
    if (*sep) return cmd_separation(sa, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Internal ? kExitFailure : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

int run(int argc, char** argv) { return run(argc, argv, std::cout, std::cerr); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> storage{"biham-euler"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace biham::cli
