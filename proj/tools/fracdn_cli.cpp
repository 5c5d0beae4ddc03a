// Command-line front end: evaluate the special functions, tabulate
// fundamental / Cauchy solutions to CSV, and run the verification suites
// with pass/fail exit codes (0 ok, 1 verification failure, 2 usage errors).

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdn/detail/random_problems.hpp"
#include "fracdn/detail/rng.hpp"
#include "fracdn/dn_operator.hpp"
#include "fracdn/oracle.hpp"
#include "fracdn/solver.hpp"
#include "fracdn/special_fn.hpp"

namespace {

using fracdn::cplx;

// shortest round-trip formatting; locale-independent by construction
std::string fd(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fc(cplx v) {
  if (v.imag() == 0.0) return fd(v.real());
  return fd(v.real()) + "," + fd(v.imag());
}

double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{} || res.ptr != e) {
    throw fracdn::ValidationError(std::string(what) + ": cannot parse '" + s +
                                  "' as a number");
  }
  return v;
}

cplx parse_complex(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s, what), 0.0};
  return {parse_double(s.substr(0, comma), what),
          parse_double(s.substr(comma + 1), what)};
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_double(item, what));
  }
  if (out.empty()) {
    throw fracdn::ValidationError(std::string(what) + ": empty list");
  }
  return out;
}

struct Grid {
  double start = 0.1;
  double end = 2.0;
  int points = 20;
};

Grid parse_grid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? 0 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw fracdn::ValidationError(
        "grid: expected start:end:points, got '" + s + "'");
  }
  Grid g;
  g.start = parse_double(s.substr(0, c1), "grid start");
  g.end = parse_double(s.substr(c1 + 1, c2 - c1 - 1), "grid end");
  g.points = static_cast<int>(parse_double(s.substr(c2 + 1), "grid points"));
  if (!(g.start > 0.0)) {
    throw fracdn::ValidationError("grid: y_start must be positive");
  }
  if (g.points < 1) {
    throw fracdn::ValidationError("grid: points must be >= 1");
  }
  if (g.points > 1 && !(g.end >= g.start)) {
    throw fracdn::ValidationError("grid: end must be >= start");
  }
  return g;
}

std::vector<double> grid_values(const Grid& g) {
  std::vector<double> ys;
  ys.reserve(static_cast<size_t>(g.points));
  if (g.points == 1) {
    ys.push_back(g.start);
    return ys;
  }
  const double step = (g.end - g.start) / (g.points - 1);
  for (int i = 0; i < g.points; ++i) ys.push_back(g.start + i * step);
  return ys;
}

int write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot open output file '" << path << "'\n";
    return 2;
  }
  out << content;
  return 0;
}

// ---------------------------------------------------------------------------
// verification suites

struct SuiteOutcome {
  bool passed = false;
  double max_err = 0.0;
};

SuiteOutcome run_oracle_suite(std::uint64_t seed, double tol_override) {
  const double tol = tol_override > 0.0 ? tol_override : 1e-5;
  const auto rep = fracdn::validate_algebra(seed, 100);
  return {rep.max_rel_error <= tol, rep.max_rel_error};
}

SuiteOutcome run_residual_suite(std::uint64_t seed, double tol_override) {
  const double tol = tol_override > 0.0 ? tol_override : 1e-8;
  fracdn::detail::Rng rng(seed);
  SuiteOutcome out;
  out.passed = true;
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);

  for (int p = 0; p < 20; ++p) {
    const auto spec = fracdn::detail::random_problem(rng, 4, 2.0, 5.0);
    for (int k = 0; k < spec.seq.m(); ++k) {
      const auto sol = fracdn::fundamental_solution(spec, k);
      const auto rep = fracdn::verify_residual(spec, sol, grid, tol);
      out.passed = out.passed && rep.passed;
      out.max_err = std::fmax(out.max_err, rep.max_rel_error);
    }
  }
  for (int p = 0; p < 10; ++p) {
    const auto spec = fracdn::detail::random_cauchy_problem(rng, 3, 2.0, 5.0);
    fracdn::CauchyData data;
    for (int j = 0; j < spec.seq.m(); ++j) {
      data.values.push_back(
          {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
    }
    const auto rep = fracdn::verify_cauchy_limits(spec, data, tol);
    out.passed = out.passed && rep.passed;
    out.max_err = std::fmax(out.max_err, rep.max_rel_error);
  }
  return out;
}

SuiteOutcome run_reductions_suite(std::uint64_t seed, double tol_override) {
  const double tol = tol_override > 0.0 ? tol_override : 1e-10;
  fracdn::detail::Rng rng(seed);
  SuiteOutcome out;
  out.passed = true;
  auto track = [&](double err, double bound) {
    out.max_err = std::fmax(out.max_err, err);
    if (!(err <= bound)) out.passed = false;
  };

  // factory exponent formulas
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng.unit() * 4.0);
    const double alpha = rng.uniform(m - 1 + 1e-3, m);
    const double mu = rng.unit();

    const auto rl = fracdn::rl_sequence(alpha, m);
    for (int k = 0; k <= m; ++k) {
      track(std::fabs(rl.alphas()[k] - (alpha + k - m)), 1e-14);
    }
    const auto cap = fracdn::caputo_sequence(alpha, m);
    for (int k = 0; k < m; ++k) {
      track(std::fabs(cap.alphas()[k] - k), 1e-14);
    }
    track(std::fabs(cap.alpha() - alpha), 1e-14);
    const auto hil =
        fracdn::hilfer_sequence(fracdn::HilferParams{alpha, mu, m});
    for (int k = 0; k < m; ++k) {
      track(std::fabs(hil.alphas()[k] - (k - (1.0 - mu) * (m - alpha))),
            1e-14);
    }
    track(std::fabs(hil.alpha() - alpha), 1e-14);

    // endpoint coincidence, elementwise
    const auto h0 =
        fracdn::hilfer_sequence(fracdn::HilferParams{alpha, 0.0, m});
    const auto h1 =
        fracdn::hilfer_sequence(fracdn::HilferParams{alpha, 1.0, m});
    for (int k = 0; k <= m; ++k) {
      track(std::fabs(h0.gammas()[k] - rl.gammas()[k]), 0.0);
      track(std::fabs(h1.gammas()[k] - cap.gammas()[k]), 0.0);
    }
  }

  // classical closed forms of the Kilbas-Saigo function
  {
    const fracdn::KilbasSaigoParams e111{1.0, 1.0, 1.0};
    const fracdn::KilbasSaigoParams e110{1.0, 1.0, 0.0};
    const fracdn::KilbasSaigoParams e121{1.0, 2.0, 1.0};
    const std::vector<cplx> zs = {{-10.0, 0.0}, {-4.0, 0.0}, {-1.0, 0.0},
                                  {0.5, 0.0},   {2.0, 0.0},  {10.0, 0.0},
                                  {6.0, 8.0},   {-7.0, 3.0}};
    for (const auto z : zs) {
      const cplx expz = std::exp(z);
      track(std::abs(fracdn::ks_eval(e111, z) - (expz - 1.0) / z) /
                std::abs((expz - 1.0) / z),
            tol);
      track(std::abs(fracdn::ks_eval(e110, z) - expz) / std::abs(expz), tol);
      const cplx exph = std::exp(0.5 * z);
      track(std::abs(fracdn::ks_eval(e121, z) - exph) / std::abs(exph), tol);
    }
  }

  // s = 0: u_k reduces to Gamma(alpha_k+1) E_{alpha, alpha_k+1}(lambda y^alpha)
  for (int trial = 0; trial < 5; ++trial) {
    const auto seq = fracdn::detail::random_dn_sequence(rng, 3, 0.35);
    const cplx lambda = trial % 2 == 0 ? cplx{1.0, 0.0} : cplx{0.5, 0.5};
    const fracdn::ProblemSpec spec{seq, 0.0, lambda};
    const double alpha = seq.alpha();
    for (int k = 0; k < seq.m(); ++k) {
      const auto sol = fracdn::fundamental_solution(spec, k);
      const double ak = seq.alphas()[k];
      const fracdn::MittagLefflerParams ml{alpha, ak + 1.0};
      const double gk = fracdn::gamma(ak + 1.0);
      for (int i = 1; i <= 20; ++i) {
        const double y = 0.1 * i;
        const cplx lhs = fracdn::eval_solution(sol, y);
        const cplx rhs = std::pow(y, ak) * gk *
                         fracdn::ml_eval(ml, lambda * std::pow(y, alpha));
        track(std::abs(lhs - rhs) / std::abs(rhs), tol);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// commands

int cmd_eval_ks(double alpha, double mm, double ll, const std::string& z_str,
                double rel_tol, int max_terms) {
  const fracdn::KilbasSaigoParams params{alpha, mm, ll};
  const fracdn::SeriesEvalConfig cfg{rel_tol, max_terms};
  const cplx z = parse_complex(z_str, "--z");
  std::cout << fc(fracdn::ks_eval(params, z, cfg)) << "\n";
  return 0;
}

int cmd_eval_ml(double alpha, double beta, const std::string& z_str,
                double rel_tol, int max_terms) {
  const fracdn::MittagLefflerParams params{alpha, beta};
  const fracdn::SeriesEvalConfig cfg{rel_tol, max_terms};
  const cplx z = parse_complex(z_str, "--z");
  std::cout << fc(fracdn::ml_eval(params, z, cfg)) << "\n";
  return 0;
}

int cmd_solve(const std::string& gammas_str, double s,
              const std::string& lambda_str, const std::string& grid_str,
              double rel_tol, const std::string& out_path) {
  const auto spec = fracdn::ProblemSpec{
      fracdn::dn_sequence_new(parse_list(gammas_str, "--gammas")), s,
      parse_complex(lambda_str, "--lambda")};
  const fracdn::SeriesEvalConfig cfg{rel_tol, 100000};
  const auto ys = grid_values(parse_grid(grid_str));

  std::vector<fracdn::SeriesSolution> sols;
  for (int k = 0; k < spec.seq.m(); ++k) {
    sols.push_back(fracdn::fundamental_solution(spec, k, cfg));
  }
  std::string csv = "y,mode,re_u,im_u\n";
  for (const double y : ys) {
    for (int k = 0; k < spec.seq.m(); ++k) {
      const cplx u = fracdn::eval_solution(sols[static_cast<size_t>(k)], y, cfg);
      csv += fd(y) + "," + std::to_string(k) + "," + fd(u.real()) + "," +
             fd(u.imag()) + "\n";
    }
  }
  return write_output(out_path, csv);
}

int cmd_cauchy(const std::string& gammas_str, double s,
               const std::string& lambda_str,
               const std::vector<std::string>& a_strs,
               const std::string& grid_str, double rel_tol,
               const std::string& out_path) {
  const auto spec = fracdn::ProblemSpec{
      fracdn::dn_sequence_new(parse_list(gammas_str, "--gammas")), s,
      parse_complex(lambda_str, "--lambda")};
  fracdn::CauchyData data;
  for (const auto& a : a_strs) data.values.push_back(parse_complex(a, "--A"));
  const auto weights = fracdn::cauchy_solution(spec, data);
  const fracdn::SeriesEvalConfig cfg{rel_tol, 100000};
  const auto ys = grid_values(parse_grid(grid_str));

  std::vector<fracdn::SeriesSolution> sols;
  for (int k = 0; k < spec.seq.m(); ++k) {
    sols.push_back(fracdn::fundamental_solution(spec, k, cfg));
  }
  // mode -1 marks the combined Cauchy solution
  std::string csv = "y,mode,re_u,im_u\n";
  for (const double y : ys) {
    cplx u{0.0, 0.0};
    for (int k = 0; k < spec.seq.m(); ++k) {
      u += weights.d[static_cast<size_t>(k)] *
           fracdn::eval_solution(sols[static_cast<size_t>(k)], y, cfg);
    }
    csv += fd(y) + ",-1," + fd(u.real()) + "," + fd(u.imag()) + "\n";
  }
  return write_output(out_path, csv);
}

int cmd_verify(const std::string& suite, std::uint64_t seed, double tol) {
  std::cout << "verify: suite=" << suite << " seed=" << seed << " tol="
            << (tol > 0.0 ? fd(tol) : std::string("per-suite defaults"))
            << "\n";
  bool all = true;
  auto report = [&](const char* name, const SuiteOutcome& o) {
    std::cout << "SUITE " << name << (o.passed ? " PASS" : " FAIL")
              << " max_rel_err=" << fd(o.max_err) << "\n";
    all = all && o.passed;
  };
  if (suite == "all" || suite == "oracle") {
    report("oracle", run_oracle_suite(seed, tol));
  }
  if (suite == "all" || suite == "residual") {
    report("residual", run_residual_suite(seed, tol));
  }
  if (suite == "all" || suite == "reductions") {
    report("reductions", run_reductions_suite(seed, tol));
  }
  return all ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{
      "Fundamental solutions of the degenerate equation "
      "D^{gamma_0..gamma_m} u = lambda y^s u with the Dzhrbashyan-Nersesyan "
      "derivative, through Kilbas-Saigo functions"};
  app.require_subcommand(1);

  // eval-ks
  double ks_alpha = 0.0, ks_mm = 0.0, ks_ll = 0.0;
  std::string ks_z;
  double ks_rel_tol = 1e-12;
  int ks_max_terms = 100000;
  auto* eval_ks = app.add_subcommand(
      "eval-ks", "Evaluate the Kilbas-Saigo function E_{alpha,m,l}(z)");
  eval_ks->add_option("--alpha", ks_alpha, "first parameter (> 0)")
      ->required();
  eval_ks->add_option("--mm", ks_mm, "second parameter m (> 0)")->required();
  eval_ks->add_option("--ll", ks_ll, "third parameter l (alpha*l+1 > 0)")
      ->required();
  eval_ks->add_option("--z", ks_z, "argument, re or re,im")->required();
  eval_ks->add_option("--rel-tol", ks_rel_tol,
                      "series truncation tolerance (default 1e-12)");
  eval_ks->add_option("--max-terms", ks_max_terms,
                      "series term budget (default 100000)");

  // eval-ml
  double ml_alpha = 0.0, ml_beta = 0.0;
  std::string ml_z;
  double ml_rel_tol = 1e-12;
  int ml_max_terms = 100000;
  auto* eval_ml = app.add_subcommand(
      "eval-ml", "Evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  eval_ml->add_option("--alpha", ml_alpha, "first parameter (> 0)")
      ->required();
  eval_ml->add_option("--beta", ml_beta, "second parameter (> 0)")
      ->required();
  eval_ml->add_option("--z", ml_z, "argument, re or re,im (|z| <= 100)")
      ->required();
  eval_ml->add_option("--rel-tol", ml_rel_tol,
                      "series truncation tolerance (default 1e-12)");
  eval_ml->add_option("--max-terms", ml_max_terms,
                      "series term budget (default 100000)");

  // solve
  std::string so_gammas, so_lambda = "0", so_grid = "0.1:2:20",
              so_out = "-";
  double so_s = 0.0, so_rel_tol = 1e-12;
  auto* solve = app.add_subcommand(
      "solve",
      "Tabulate the fundamental solutions u_k on a grid as CSV "
      "(y,mode,re_u,im_u)");
  solve->add_option("--gammas", so_gammas,
                    "sequence gamma_0,...,gamma_m (each in (0,1])")
      ->required();
  solve->add_option("--s", so_s, "degeneracy exponent s >= 0 (default 0)");
  solve->add_option("--lambda", so_lambda,
                    "spectral parameter, re or re,im (default 0)");
  solve->add_option("--grid", so_grid,
                    "y grid start:end:points (default 0.1:2:20)");
  solve->add_option("--rel-tol", so_rel_tol,
                    "series truncation tolerance (default 1e-12)");
  solve->add_option("--out", so_out, "output file, - for stdout (default -)");

  // cauchy
  std::string ca_gammas, ca_lambda = "0", ca_grid = "0.1:2:20", ca_out = "-";
  double ca_s = 0.0, ca_rel_tol = 1e-12;
  std::vector<std::string> ca_a;
  auto* cauchy = app.add_subcommand(
      "cauchy",
      "Tabulate the Cauchy-problem solution (weights A_k / Gamma(alpha_k+1)); "
      "CSV rows carry mode -1");
  cauchy->add_option("--gammas", ca_gammas,
                     "sequence gamma_0,...,gamma_m (each in (0,1])")
      ->required();
  cauchy->add_option("--s", ca_s, "degeneracy exponent s >= 0 (default 0)");
  cauchy->add_option("--lambda", ca_lambda,
                     "spectral parameter, re or re,im (default 0)");
  cauchy
      ->add_option("--A", ca_a,
                   "Cauchy data A_0 ... A_{m-1}, each re or re,im")
      ->required()
      ->expected(-1);
  cauchy->add_option("--grid", ca_grid,
                     "y grid start:end:points (default 0.1:2:20)");
  cauchy->add_option("--rel-tol", ca_rel_tol,
                     "series truncation tolerance (default 1e-12)");
  cauchy->add_option("--out", ca_out, "output file, - for stdout (default -)");

  // verify
  std::string ve_suite = "all";
  std::uint64_t ve_seed = 7;
  double ve_tol = 0.0;
  auto* verify = app.add_subcommand(
      "verify", "Run the verification suites; exits 0 iff all pass");
  verify
      ->add_option("--suite", ve_suite,
                   "all | residual | oracle | reductions (default all)")
      ->check(CLI::IsMember({"all", "residual", "oracle", "reductions"}));
  verify->add_option("--seed", ve_seed, "random seed (default 7)");
  verify->add_option(
      "--tol", ve_tol,
      "tolerance override; 0 keeps per-suite defaults "
      "(oracle 1e-5, residual 1e-8, reductions 1e-10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eval_ks->parsed()) {
      return cmd_eval_ks(ks_alpha, ks_mm, ks_ll, ks_z, ks_rel_tol,
                         ks_max_terms);
    }
    if (eval_ml->parsed()) {
      return cmd_eval_ml(ml_alpha, ml_beta, ml_z, ml_rel_tol, ml_max_terms);
    }
    if (solve->parsed()) {
      return cmd_solve(so_gammas, so_s, so_lambda, so_grid, so_rel_tol,
                       so_out);
    }
    if (cauchy->parsed()) {
      return cmd_cauchy(ca_gammas, ca_s, ca_lambda, ca_a, ca_grid, ca_rel_tol,
                        ca_out);
    }
    if (verify->parsed()) {
      return cmd_verify(ve_suite, ve_seed, ve_tol);
    }
  } catch (const fracdn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
