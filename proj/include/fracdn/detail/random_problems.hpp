#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "fracdn/detail/rng.hpp"
#include "fracdn/solver.hpp"

namespace fracdn::detail {

// Draw helpers for the randomized verification suites.
//
// alpha_min keeps the series usable at desk scale: the stopping rule needs
// the coefficient ratio ~((alpha+s)n)^{-alpha} to fall below 1/(2|z|), which
// takes ~(2|z|)^{1/alpha} terms, past any sane budget once alpha drops much
// below ~0.3.

inline DnSequence random_dn_sequence(Rng& rng, int m_max,
                                     double alpha_min = 0.35) {
  for (;;) {
    int m = 1 + static_cast<int>(rng.unit() * m_max);
    if (m > m_max) m = m_max;
    std::vector<double> g(static_cast<size_t>(m) + 1);
    for (auto& x : g) x = rng.unit_pos();
    double alpha = -1.0;
    for (double x : g) alpha += x;
    if (alpha >= alpha_min) return DnSequence(std::move(g));
  }
}

// uniform on the disk |lambda| <= r_max
inline cplx random_lambda(Rng& rng, double r_max) {
  const double r = r_max * std::sqrt(rng.unit());
  const double th = 2.0 * std::numbers::pi * rng.unit();
  return {r * std::cos(th), r * std::sin(th)};
}

inline ProblemSpec random_problem(Rng& rng, int m_max, double s_max,
                                  double lambda_max,
                                  double alpha_min = 0.35) {
  DnSequence seq = random_dn_sequence(rng, m_max, alpha_min);
  const double s = rng.uniform(0.0, s_max);
  return ProblemSpec{std::move(seq), s, random_lambda(rng, lambda_max)};
}

// Restricted to problems whose Cauchy limits exist: every n >= 1 term of
// D^{alpha_j} u_k vanishes at y -> 0 iff alpha + s > alpha_{m-1} - alpha_0,
// i.e. s + gamma_0 + gamma_m > 1.
inline ProblemSpec random_cauchy_problem(Rng& rng, int m_max, double s_max,
                                         double lambda_max,
                                         double alpha_min = 0.35) {
  for (;;) {
    DnSequence seq = random_dn_sequence(rng, m_max, alpha_min);
    const double s = rng.uniform(0.0, s_max);
    const auto& g = seq.gammas();
    if (s + g.front() + g.back() > 1.05) {
      return ProblemSpec{std::move(seq), s, random_lambda(rng, lambda_max)};
    }
  }
}

}  // namespace fracdn::detail
