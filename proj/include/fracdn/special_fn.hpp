#pragma once

#include <complex>
#include <vector>

#include "fracdn/errors.hpp"

namespace fracdn {

using cplx = std::complex<double>;

// Parameters (alpha, m, l) of the Kilbas-Saigo function E_{alpha,m,l}.
// alpha*l + 1 > 0 keeps every gamma argument alpha*(j*m + l) + 1 positive,
// since they increase in j.
struct KilbasSaigoParams {
  double alpha;
  double m_param;
  double l_param;

  KilbasSaigoParams(double alpha, double m_param, double l_param);
};

// Parameters (alpha, beta) of the Mittag-Leffler function E_{alpha,beta}.
struct MittagLefflerParams {
  double alpha;
  double beta;

  MittagLefflerParams(double alpha, double beta);
};

struct SeriesEvalConfig {
  double rel_tol = 1e-12;
  int max_terms = 100000;

  void validate() const;
};

// Gamma(x). Lanczos kernel, reflection below zero; relative error <= 1e-13 on
// (0, 170].  Throws PoleError at non-positive integers, OverflowError above
// 171.624.
double gamma(double x);

// ln Gamma(x) for x > 0; |error| <= 1e-12 * max(1, |ln Gamma(x)|).
double log_gamma(double x);

// Gamma(x+a) / Gamma(x+b), finite where the direct gammas would overflow.
// Requires x+a > 0 and x+b > 0.
double gamma_ratio(double x, double a, double b);

// sum_n z^n / Gamma(alpha n + beta), |z| <= 100.
cplx ml_eval(const MittagLefflerParams& params, cplx z,
             const SeriesEvalConfig& cfg = {});

// Coefficients c_0..c_n of E_{alpha,m,l}: c_0 = 1,
// c_i = c_{i-1} * Gamma(alpha((i-1)m+l)+1) / Gamma(alpha((i-1)m+l+1)+1).
std::vector<double> ks_coefficients(const KilbasSaigoParams& params, int n);

// E_{alpha,m,l}(z) = sum_i c_i z^i.  Entire in z; the stopping rule needs the
// coefficient ratio to decay below 1/(2|z|), which for small alpha can take
// more than max_terms terms (TruncationFailure).
cplx ks_eval(const KilbasSaigoParams& params, cplx z,
             const SeriesEvalConfig& cfg = {});

namespace detail {
struct DD;
// Gamma(p)/Gamma(q) with an exact telescoped product when q - p is a small
// integer (Gamma(x+1) = x Gamma(x)); log-space otherwise.
DD gamma_quotient_dd(double p, double q);
}  // namespace detail

}  // namespace fracdn
