#pragma once

#include <complex>
#include <vector>

#include "fracdn/errors.hpp"
#include "fracdn/special_fn.hpp"

namespace fracdn {

// The sequence {gamma_0..gamma_m}, gamma_k in (0,1], defining the
// Dzhrbashyan-Nersesyan operator D^{gamma_m - 1} D^{gamma_{m-1}} ... D^{gamma_0}
// of order alpha = sum gamma_k - 1 > 0, together with the derived orders
// alpha_k = gamma_0 + ... + gamma_k - 1.  Immutable after construction; the
// alpha_k are derived once here and never re-derived inside operator loops.
class DnSequence {
 public:
  explicit DnSequence(std::vector<double> gammas);

  const std::vector<double>& gammas() const { return gammas_; }
  const std::vector<double>& alphas() const { return alphas_; }
  double alpha() const { return alphas_.back(); }
  int m() const { return static_cast<int>(gammas_.size()) - 1; }

 private:
  std::vector<double> gammas_;
  std::vector<double> alphas_;
};

// One term C * y^delta.  coeff == 0 is the canonical zero regardless of
// exponent.
struct Monomial {
  cplx coeff{0.0, 0.0};
  double exponent = 0.0;

  bool is_zero() const { return coeff == cplx{0.0, 0.0}; }
};

// Either annihilation to the exact zero function (a kernel power was hit at
// some d/dy stage) or another monomial.
class PowerRuleResult {
 public:
  static PowerRuleResult kernel() { return PowerRuleResult{}; }
  static PowerRuleResult term(const Monomial& m) {
    PowerRuleResult r;
    r.term_ = m;
    r.has_term_ = true;
    return r;
  }

  bool is_kernel() const { return !has_term_; }
  const Monomial& term() const;

 private:
  Monomial term_{};
  bool has_term_ = false;
};

// Hilfer derivative parameters: order alpha in (m-1, m], interpolation
// weight mu in [0,1] (mu = 0 Riemann-Liouville, mu = 1 Caputo).
struct HilferParams {
  double alpha;
  double mu;
  int m;

  HilferParams(double alpha, double mu, int m);
};

DnSequence dn_sequence_new(std::vector<double> gammas);

// {alpha-m+1, 1, ..., 1}: the Riemann-Liouville derivative of order alpha,
// alpha_k = alpha + k - m.
DnSequence rl_sequence(double alpha, int m);

// {1, ..., 1, alpha-m+1}: the Caputo derivative, alpha_k = k for k < m.
DnSequence caputo_sequence(double alpha, int m);

// {1-(1-mu)(m-alpha), 1, ..., 1, 1-mu(m-alpha)}:
// alpha_k = k - (1-mu)(m-alpha) for k < m.
DnSequence hilfer_sequence(const HilferParams& p);

// One Riemann-Liouville differintegral step on a monomial: identity at
// order 0, I^{-order} for order < 0, and (d/dy)^p I^{p-order} for
// p-1 < order <= p.  Kernel when some d/dy meets exponent 0.
PowerRuleResult rl_step(double order, const Monomial& input);

// Full operator by elementary-stage composition, exponents pinned to the
// derived alpha_k.  DomainError when an intermediate integral would diverge
// (possible for exponents strictly between kernel powers).
PowerRuleResult dn_apply_monomial(const DnSequence& seq, const Monomial& input);

// Closed form Gamma(delta+1)/Gamma(delta+1-alpha) y^{delta-alpha}, valid for
// delta - alpha_{m-1} > 0; Kernel at delta = alpha_k (k <= m-1) within
// 1e-12 relative; UnsupportedDomain below the validity strip.
PowerRuleResult dn_power_rule(const DnSequence& seq, double delta);

// Same coefficient as dn_power_rule taken as an analytic continuation: no
// validity-strip check, only positivity of the gamma arguments.  Termwise
// series verification differentiates its n >= 1 terms with this.
PowerRuleResult dn_power_rule_formal(const DnSequence& seq, double delta);

// Boundary operator D^{alpha_j} = D^{gamma_j - 1} (d/dy) D^{alpha_{j-1}},
// D^{alpha_0} = D^{gamma_0 - 1}, applied by elementary-step composition.
// On y^{alpha_k}: zero for k < j, the constant Gamma(1+alpha_j) for k = j,
// Gamma(1+alpha_k)/Gamma(1+alpha_k-alpha_j) y^{alpha_k-alpha_j} for k > j.
PowerRuleResult boundary_apply_monomial(const DnSequence& seq, int j,
                                        const Monomial& input);

}  // namespace fracdn
