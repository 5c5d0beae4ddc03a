#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "fracdn/detail/random_problems.hpp"
#include "fracdn/solver.hpp"
#include "reference_values.hpp"

using namespace fracdn;

namespace {

std::vector<double> grid_01_to_1() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(0.1 * i);
  return g;
}

}  // namespace

TEST_CASE("ProblemSpec validation") {
  CHECK_THROWS_AS(
      ProblemSpec(dn_sequence_new({1.0, 1.0}), -0.1, cplx{1.0, 0.0}),
      ValidationError);
}

TEST_CASE("fundamental_solution of u' = lambda y u") {
  // {1,1}, s = 1: u_0 = E_{1,2,1}(lambda y^2) = exp(lambda y^2 / 2)
  const ProblemSpec spec{dn_sequence_new({1.0, 1.0}), 1.0, cplx{0.7, 0.0}};
  const auto sol = fundamental_solution(spec, 0);
  CHECK(sol.base_exponent == 0.0);
  CHECK(sol.step == 2.0);
  CHECK(sol.ks_params.alpha == 1.0);
  CHECK(sol.ks_params.m_param == 2.0);
  CHECK(sol.ks_params.l_param == 1.0);
  // c_i = 1 / (2^i i!)
  double want = 1.0;
  for (int i = 0; i <= 6; ++i) {
    CHECK(std::fabs(sol.coeffs[i] - want) <= want * 1e-13);
    want /= 2.0 * (i + 1);
  }
  CHECK(ref::rel_err(eval_solution(sol, 1.0), cplx{std::exp(0.35), 0.0}) <=
        1e-11);
  CHECK(ref::rel_err(eval_solution(sol, 1.7),
                     cplx{std::exp(0.7 * 1.7 * 1.7 / 2.0), 0.0}) <= 1e-11);
}

TEST_CASE("lambda = 0 solutions are pure powers") {
  detail::Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const auto spec =
        ProblemSpec{detail::random_dn_sequence(rng, 4, 0.05),
                    rng.uniform(0.0, 2.0), cplx{0.0, 0.0}};
    for (int k = 0; k < spec.seq.m(); ++k) {
      const auto sol = fundamental_solution(spec, k);
      const double y = rng.uniform(0.2, 2.0);
      const cplx u = eval_solution(sol, y);
      CHECK(u.imag() == 0.0);
      CHECK(ref::rel_err(u.real(), std::pow(y, spec.seq.alphas()[k])) <=
            1e-14);
    }
  }
}

TEST_CASE("Riemann-Liouville mode reduces to the classical eigenfunction") {
  // seq = rl_sequence(0.5, 1), s = 0:
  // u_0(y) = y^{-0.5} Gamma(0.5) E_{0.5,0.5}(lambda y^{0.5})
  const cplx lambda{0.9, 0.0};
  const ProblemSpec spec{rl_sequence(0.5, 1), 0.0, lambda};
  const auto sol = fundamental_solution(spec, 0);
  CHECK(std::fabs(sol.ks_params.l_param - (-1.0)) <= 1e-15);
  for (double y : grid_01_to_1()) {
    const cplx lhs = eval_solution(sol, y);
    const cplx rhs = std::pow(y, -0.5) * fracdn::gamma(0.5) *
                     ml_eval({0.5, 0.5}, lambda * std::sqrt(y));
    CHECK(ref::rel_err(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("stored ks_params satisfy the reindexing identities") {
  detail::Rng rng(17);
  for (int t = 0; t < 50; ++t) {
    const auto spec = detail::random_problem(rng, 5, 2.0, 5.0, 0.05);
    for (int k = 0; k < spec.seq.m(); ++k) {
      const auto sol = fundamental_solution(spec, k);
      const double alpha = spec.seq.alpha();
      CHECK(std::fabs(sol.ks_params.m_param - sol.step / alpha) <= 1e-15);
      CHECK(std::fabs(sol.ks_params.l_param -
                      (sol.base_exponent + spec.s) / alpha) <= 1e-15);
      CHECK(sol.coeffs[0] == 1.0);
      for (double c : sol.coeffs) CHECK(c > 0.0);
    }
  }
}

TEST_CASE("coefficient recurrence telescopes") {
  detail::Rng rng(29);
  for (int t = 0; t < 20; ++t) {
    const auto spec = detail::random_problem(rng, 4, 2.0, 5.0, 0.05);
    const auto sol = fundamental_solution(spec, 0);
    const double a = sol.step;
    const double b = sol.base_exponent;
    const double alpha = spec.seq.alpha();
    const int n_max =
        std::min<int>(60, static_cast<int>(sol.coeffs.size()) - 1);
    for (int n = 1; n <= n_max; ++n) {
      const double back = sol.coeffs[n] *
                          gamma_ratio(a * n + b + 1.0, 0.0, -alpha);
      CHECK(ref::rel_err(back, sol.coeffs[n - 1]) <= 1e-12);
    }
  }
}

TEST_CASE("coefficients match the independent product oracle") {
  detail::Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const auto spec = detail::random_problem(rng, 4, 2.0, 5.0, 0.05);
    for (int k = 0; k < spec.seq.m(); ++k) {
      const auto sol = fundamental_solution(spec, k);
      const int n_max =
          std::min<int>(40, static_cast<int>(sol.coeffs.size()) - 1);
      const auto oracle = ref::solution_coeffs_product(
          spec.seq.alpha(), spec.s, sol.base_exponent, n_max);
      for (int n = 0; n <= n_max; ++n) {
        CHECK(ref::rel_err(sol.coeffs[n], oracle[n]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("eval_solution guards") {
  const ProblemSpec spec{dn_sequence_new({1.0, 1.0}), 0.0, cplx{1.0, 0.0}};
  const auto sol = fundamental_solution(spec, 0);
  CHECK_THROWS_AS(eval_solution(sol, 0.0), DomainError);
  CHECK_THROWS_AS(eval_solution(sol, -1.0), DomainError);
  CHECK_THROWS_AS(fundamental_solution(spec, 1), IndexError);
  CHECK_THROWS_AS(fundamental_solution(spec, -1), IndexError);
}

TEST_CASE("rl mode with alpha = 1 is the plain exponential") {
  const cplx lambda{0.8, 0.0};
  const ProblemSpec spec{rl_sequence(1.0, 1), 0.0, lambda};
  const auto sol = fundamental_solution(spec, 0);
  CHECK(sol.ks_params.l_param == 0.0);
  for (double y : grid_01_to_1()) {
    CHECK(ref::rel_err(eval_solution(sol, y),
                       std::exp(lambda * y)) <= 1e-12);
  }
}

TEST_CASE("general_solution") {
  detail::Rng rng(53);
  const auto spec = ProblemSpec{dn_sequence_new({0.8, 0.7, 0.9}), 0.5,
                                cplx{0.6, 0.3}};
  const int m = spec.seq.m();

  GeneralSolutionWeights zero;
  zero.d.assign(m, cplx{0.0, 0.0});
  CHECK(general_solution(spec, zero, 1.3) == cplx{0.0, 0.0});

  // unit weights pick out single modes
  for (int j = 0; j < m; ++j) {
    GeneralSolutionWeights e;
    e.d.assign(m, cplx{0.0, 0.0});
    e.d[j] = cplx{1.0, 0.0};
    const cplx via_general = general_solution(spec, e, 0.9);
    const cplx direct = eval_solution(fundamental_solution(spec, j), 0.9);
    CHECK(ref::rel_err(via_general, direct) <= 1e-14);
  }

  // against the brute-force double summation
  GeneralSolutionWeights w;
  for (int j = 0; j < m; ++j) {
    w.d.push_back({rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
  }
  for (double y : {0.3, 0.8, 1.4}) {
    const cplx got = general_solution(spec, w, y);
    const cplx want = ref::general_solution_brute(
        spec.seq.alphas(), spec.seq.alpha(), spec.s, spec.lambda, w.d, y);
    CHECK(ref::rel_err(got, want) <= 1e-10);
  }

  GeneralSolutionWeights bad;
  bad.d.assign(m + 1, cplx{1.0, 0.0});
  CHECK_THROWS_AS(general_solution(spec, bad, 1.0), ValidationError);
}

TEST_CASE("cauchy_solution weights") {
  const ProblemSpec spec{dn_sequence_new({0.7, 0.9, 0.8}), 0.5,
                         cplx{1.0, 0.0}};
  CauchyData zero;
  zero.values.assign(2, cplx{0.0, 0.0});
  const auto w0 = cauchy_solution(spec, zero);
  for (const auto& d : w0.d) CHECK(d == cplx{0.0, 0.0});

  CauchyData data;
  data.values = {cplx{1.0, -0.5}, cplx{2.0, 0.25}};
  const auto w = cauchy_solution(spec, data);
  REQUIRE(w.d.size() == 2);
  for (int k = 0; k < 2; ++k) {
    const cplx back = w.d[k] * fracdn::gamma(spec.seq.alphas()[k] + 1.0);
    CHECK(ref::rel_err(back, data.values[k]) <= 1e-14);
  }

  CauchyData bad;
  bad.values.assign(3, cplx{0.0, 0.0});
  CHECK_THROWS_AS(cauchy_solution(spec, bad), ValidationError);
}

TEST_CASE("cauchy m=1 gives the classical RL eigenfunction") {
  // u(y) = y^{alpha-1} E_{alpha,alpha}(lambda y^alpha) solves the m=1
  // problem with A_0 = 1
  const double alpha = 0.6;
  const cplx lambda{1.1, 0.0};
  const ProblemSpec spec{rl_sequence(alpha, 1), 0.0, lambda};
  CauchyData data;
  data.values = {cplx{1.0, 0.0}};
  const auto w = cauchy_solution(spec, data);
  for (double y : grid_01_to_1()) {
    const cplx got = general_solution(spec, w, y);
    const cplx want = std::pow(y, alpha - 1.0) *
                      ml_eval({alpha, alpha}, lambda * std::pow(y, alpha));
    CHECK(ref::rel_err(got, want) <= 1e-10);
  }
}

TEST_CASE("verify_residual classical case") {
  // exp(lambda y^2/2) under d/dy - lambda y
  const ProblemSpec spec{dn_sequence_new({1.0, 1.0}), 1.0, cplx{1.0, 0.0}};
  const auto sol = fundamental_solution(spec, 0);
  const auto rep = verify_residual(spec, sol, default_verification_grid(),
                                   1e-10);
  CHECK(rep.passed);
  CHECK(rep.max_rel_error <= 1e-10);
}

TEST_CASE("verify_residual with lambda = 0 is exact") {
  const ProblemSpec spec{dn_sequence_new({0.7, 0.9}), 0.3, cplx{0.0, 0.0}};
  const auto sol = fundamental_solution(spec, 0);
  const auto rep = verify_residual(spec, sol, grid_01_to_1(), 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_rel_error == 0.0);
}

TEST_CASE("verify_residual on random problems") {
  detail::Rng rng(61);
  const auto grid = grid_01_to_1();
  for (int t = 0; t < 10; ++t) {
    const auto spec = detail::random_problem(rng, 4, 2.0, 5.0);
    for (int k = 0; k < spec.seq.m(); ++k) {
      const auto sol = fundamental_solution(spec, k);
      const auto rep = verify_residual(spec, sol, grid, 1e-8);
      CHECK(rep.passed);
      CHECK(rep.terms_used > 0);
    }
  }
}

TEST_CASE("verify_residual rejects a wrong base exponent") {
  const ProblemSpec spec{dn_sequence_new({0.7, 0.9}), 0.0, cplx{1.0, 0.0}};
  auto sol = fundamental_solution(spec, 0);
  sol.base_exponent = 0.37;  // not a kernel power
  const auto rep = verify_residual(spec, sol, grid_01_to_1(), 1e-8);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("verify_residual input validation") {
  const ProblemSpec spec{dn_sequence_new({0.7, 0.9}), 0.0, cplx{1.0, 0.0}};
  const auto sol = fundamental_solution(spec, 0);
  CHECK_THROWS_AS(verify_residual(spec, sol, {}, 1e-8), ValidationError);
  CHECK_THROWS_AS(verify_residual(spec, sol, {0.5, -0.2}, 1e-8), DomainError);
}

TEST_CASE("boundary_limit_matrix is diagonal with Gamma(1+alpha_k)") {
  detail::Rng rng(71);
  for (int t = 0; t < 10; ++t) {
    const auto spec = detail::random_cauchy_problem(rng, 3, 2.0, 5.0);
    const auto blm = boundary_limit_matrix(spec);
    CHECK(blm.exponents_positive);
    const int m = spec.seq.m();
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        if (j == k) {
          CHECK(ref::rel_err(blm.entries[j][k].real(),
                             fracdn::gamma(1.0 + spec.seq.alphas()[k])) <= 1e-10);
          CHECK(blm.entries[j][k].imag() == 0.0);
        } else {
          CHECK(blm.entries[j][k] == cplx{0.0, 0.0});
        }
      }
    }
  }
}

TEST_CASE("verify_cauchy_limits recovers the data") {
  // spec'd example: caputo(1.7, 2), s = 1, A = (1, 2)
  const ProblemSpec spec{caputo_sequence(1.7, 2), 1.0, cplx{0.8, 0.4}};
  CauchyData data;
  data.values = {cplx{1.0, 0.0}, cplx{2.0, 0.0}};
  const auto rep = verify_cauchy_limits(spec, data, 1e-8);
  CHECK(rep.passed);
  CHECK(rep.max_rel_error <= 1e-8);
}

TEST_CASE("verify_cauchy_limits unit data vectors") {
  const ProblemSpec spec{dn_sequence_new({0.9, 0.8, 0.7}), 1.2,
                         cplx{1.5, -0.5}};
  for (int j = 0; j < spec.seq.m(); ++j) {
    CauchyData data;
    data.values.assign(spec.seq.m(), cplx{0.0, 0.0});
    data.values[j] = cplx{1.0, 0.0};
    const auto rep = verify_cauchy_limits(spec, data, 1e-8);
    CHECK(rep.passed);
  }
}

TEST_CASE("verify_cauchy_limits with lambda = 0 is exact") {
  const ProblemSpec spec{dn_sequence_new({0.4, 0.9}), 0.0, cplx{0.0, 0.0}};
  CauchyData data;
  data.values = {cplx{2.5, 1.0}};
  const auto rep = verify_cauchy_limits(spec, data, 1e-12);
  CHECK(rep.passed);
  CHECK(rep.max_rel_error <= 1e-14);
}

TEST_CASE("verify_cauchy_limits reports non-vanishing terms honestly") {
  // alpha + s = 0.3 < alpha_1 - alpha_0 = 1.4: the n = 1 term of
  // D^{alpha_1} u_0 blows up at 0, so the limit data cannot be attained
  const ProblemSpec spec{dn_sequence_new({0.2, 0.9, 0.2}), 0.0,
                         cplx{1.0, 0.0}};
  CauchyData data;
  data.values = {cplx{1.0, 0.0}, cplx{1.0, 0.0}};
  const auto rep = verify_cauchy_limits(spec, data, 1e-8);
  CHECK_FALSE(rep.passed);
}

TEST_CASE("ratio decay of solution terms") {
  detail::Rng rng(83);
  // (a n)^{-alpha} * |lambda y^a| < 1e-3 by n = 200 needs alpha well above 1;
  // ratios come from the defining quotient since the coefficients themselves
  // underflow out there
  for (int t = 0; t < 5; ++t) {
    const auto seq = detail::random_dn_sequence(rng, 4, 1.8);
    const ProblemSpec spec{seq, rng.uniform(0.0, 2.0), cplx{2.0, 1.0}};
    const auto sol = fundamental_solution(spec, 0);
    const double alpha = seq.alpha();
    auto ratio = [&](int n) {
      // c_{n+1} / c_n
      return gamma_ratio(sol.step * (n + 1) + sol.base_exponent + 1.0, -alpha,
                         0.0);
    };
    CHECK(ratio(200) * 10.0 < 1e-3);
    CHECK(ratio(200) < ratio(10));
  }
}

TEST_CASE("special-case mode exponents and l parameters") {
  // Riemann-Liouville: exponents alpha - j and l = (alpha + s - j)/alpha
  {
    const double alpha = 2.3;
    const double s = 0.7;
    const ProblemSpec spec{rl_sequence(alpha, 3), s, cplx{1.0, 0.0}};
    for (int k = 0; k < 3; ++k) {
      const auto sol = fundamental_solution(spec, k);
      const int j = 3 - k;
      CHECK(std::fabs(sol.base_exponent - (alpha - j)) <= 1e-14);
      CHECK(std::fabs(sol.ks_params.l_param - (alpha + s - j) / alpha) <=
            1e-14);
      CHECK(std::fabs(sol.ks_params.m_param - (alpha + s) / alpha) <= 1e-15);
    }
  }
  // Caputo: exponents k and l = (k + s)/alpha
  {
    const double alpha = 1.7;
    const double s = 1.0;
    const ProblemSpec spec{caputo_sequence(alpha, 2), s, cplx{1.0, 0.0}};
    for (int k = 0; k < 2; ++k) {
      const auto sol = fundamental_solution(spec, k);
      CHECK(std::fabs(sol.base_exponent - k) <= 1e-14);
      CHECK(std::fabs(sol.ks_params.l_param - (k + s) / alpha) <= 1e-14);
    }
  }
  // Hilfer: exponents k - (1-mu)(m-alpha)
  {
    const double alpha = 1.4;
    const double mu = 0.3;
    const ProblemSpec spec{hilfer_sequence({alpha, mu, 2}), 0.5,
                           cplx{1.0, 0.0}};
    for (int k = 0; k < 2; ++k) {
      const auto sol = fundamental_solution(spec, k);
      CHECK(std::fabs(sol.base_exponent -
                      (k - (1.0 - mu) * (2.0 - alpha))) <= 1e-14);
    }
  }
}

TEST_CASE("solution construction is deterministic") {
  const ProblemSpec spec{dn_sequence_new({0.7, 0.9, 0.8}), 0.5,
                         cplx{1.0, 0.5}};
  const auto s1 = fundamental_solution(spec, 1);
  const auto s2 = fundamental_solution(spec, 1);
  CHECK(s1.coeffs == s2.coeffs);
  const cplx a = eval_solution(s1, 1.23);
  const cplx b = eval_solution(s2, 1.23);
  CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);
}
