#include "fracdn/dn_operator.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "fracdn/detail/double_double.hpp"

namespace fracdn {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Double-precision alpha_k arithmetic accumulates ~1e-16 per addition, so
// exponents within 1e-12 (relative) of a kernel power count as annihilated.
bool is_kernel_power(double delta, double alpha_k) {
  return std::fabs(delta - alpha_k) <=
         1e-12 * std::fmax(1.0, std::fabs(alpha_k));
}

double gamma_quotient(double p, double q) {
  return detail::gamma_quotient_dd(p, q).value();
}

}  // namespace

const Monomial& PowerRuleResult::term() const {
  if (!has_term_) {
    throw Error("PowerRuleResult: kernel result has no term");
  }
  return term_;
}

DnSequence::DnSequence(std::vector<double> gammas)
    : gammas_(std::move(gammas)) {
  if (gammas_.size() < 2) {
    throw ValidationError(
        "DnSequence: at least two entries required (m >= 1), got " +
        std::to_string(gammas_.size()));
  }
  alphas_.reserve(gammas_.size());
  double acc = -1.0;
  for (size_t k = 0; k < gammas_.size(); ++k) {
    const double g = gammas_[k];
    if (!(g > 0.0) || g > 1.0) {
      throw ValidationError("DnSequence: gamma_" + std::to_string(k) +
                            " must lie in (0, 1], got " + fmt(g));
    }
    acc += g;
    alphas_.push_back(acc);
  }
  if (!(alphas_.back() > 0.0)) {
    throw ValidationError(
        "DnSequence: order alpha = sum gamma_k - 1 must be positive, got " +
        fmt(alphas_.back()));
  }
  for (size_t k = 1; k < alphas_.size(); ++k) {
    if (!(alphas_[k] > alphas_[k - 1])) {
      throw ValidationError(
          "DnSequence: derived orders alpha_k must increase strictly");
    }
  }
}

DnSequence dn_sequence_new(std::vector<double> gammas) {
  return DnSequence(std::move(gammas));
}

DnSequence rl_sequence(double alpha, int m) {
  if (m < 1) {
    throw ValidationError("rl_sequence: m must be >= 1, got " +
                          std::to_string(m));
  }
  if (!(alpha > m - 1 && alpha <= m)) {
    throw ValidationError("rl_sequence: alpha must lie in (m-1, m], got " +
                          fmt(alpha));
  }
  std::vector<double> g(static_cast<size_t>(m) + 1, 1.0);
  g[0] = (alpha - m) + 1.0;
  return DnSequence(std::move(g));
}

DnSequence caputo_sequence(double alpha, int m) {
  if (m < 1) {
    throw ValidationError("caputo_sequence: m must be >= 1, got " +
                          std::to_string(m));
  }
  if (!(alpha > m - 1 && alpha <= m)) {
    throw ValidationError("caputo_sequence: alpha must lie in (m-1, m], got " +
                          fmt(alpha));
  }
  std::vector<double> g(static_cast<size_t>(m) + 1, 1.0);
  g[static_cast<size_t>(m)] = (alpha - m) + 1.0;
  return DnSequence(std::move(g));
}

HilferParams::HilferParams(double alpha_, double mu_, int m_)
    : alpha(alpha_), mu(mu_), m(m_) {
  if (m < 1) {
    throw ValidationError("HilferParams: m must be >= 1, got " +
                          std::to_string(m));
  }
  if (!(alpha > m - 1 && alpha <= m)) {
    throw ValidationError("HilferParams: alpha must lie in (m-1, m], got " +
                          fmt(alpha));
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw ValidationError("HilferParams: mu must lie in [0, 1], got " +
                          fmt(mu));
  }
}

DnSequence hilfer_sequence(const HilferParams& p) {
  // x = m - alpha; negation keeps the mu = 0 / mu = 1 endpoints bitwise equal
  // to the factory sequences they reduce to.
  const double x = p.m - p.alpha;
  std::vector<double> g(static_cast<size_t>(p.m) + 1, 1.0);
  g[0] = 1.0 - (1.0 - p.mu) * x;
  g[static_cast<size_t>(p.m)] = 1.0 - p.mu * x;
  return DnSequence(std::move(g));
}

namespace {

// I^{sigma} on a monomial, sigma >= 0; identity at sigma = 0.
PowerRuleResult integral_step(double sigma, const Monomial& input) {
  if (sigma == 0.0) return PowerRuleResult::term(input);
  if (input.exponent <= -1.0) {
    throw DomainError(
        "Riemann-Liouville integral diverges: monomial exponent " +
        fmt(input.exponent) + " <= -1");
  }
  const double c = gamma_quotient(input.exponent + 1.0,
                                  input.exponent + 1.0 + sigma);
  return PowerRuleResult::term({input.coeff * c, input.exponent + sigma});
}

PowerRuleResult differentiate_step(const Monomial& input) {
  if (is_kernel_power(input.exponent, 0.0)) return PowerRuleResult::kernel();
  return PowerRuleResult::term(
      {input.coeff * input.exponent, input.exponent - 1.0});
}

}  // namespace

PowerRuleResult rl_step(double order, const Monomial& input) {
  if (order <= 0.0) return integral_step(-order, input);
  const int p = static_cast<int>(std::ceil(order));
  PowerRuleResult cur = integral_step(p - order, input);
  for (int i = 0; i < p && !cur.is_kernel(); ++i) {
    cur = differentiate_step(cur.term());
  }
  return cur;
}

PowerRuleResult dn_apply_monomial(const DnSequence& seq,
                                  const Monomial& input) {
  const double delta = input.exponent;
  if (delta <= -1.0) {
    throw DomainError("dn_apply_monomial: monomial exponent " + fmt(delta) +
                      " <= -1");
  }
  const auto& al = seq.alphas();
  const auto& g = seq.gammas();
  const int m = seq.m();
  cplx coeff = input.coeff;
  // Stages k = 0..m-1: D^{gamma_k} = d/dy after I^{1-gamma_k}.  Exponents are
  // pinned: after stage k the exponent is delta - alpha_k - 1, so the kernel
  // test compares delta against the stored alpha_k directly.
  for (int k = 0; k < m; ++k) {
    const double e_in = (k == 0) ? delta : delta - al[k - 1] - 1.0;
    if (k > 0 && e_in <= -1.0) {
      throw DomainError("dn_apply_monomial: stage " + std::to_string(k) +
                        " integral diverges (exponent " + fmt(delta) +
                        " <= alpha_" + std::to_string(k - 1) + " = " +
                        fmt(al[k - 1]) + ")");
    }
    if (is_kernel_power(delta, al[k])) return PowerRuleResult::kernel();
    coeff *= gamma_quotient(e_in + 1.0, delta - al[k] + 1.0);
    coeff *= delta - al[k];
  }
  // Final stage: pure integral of order 1 - gamma_m (identity at gamma_m = 1).
  if (g[m] < 1.0) {
    const double e_in = delta - al[m - 1] - 1.0;
    if (e_in <= -1.0) {
      throw DomainError(
          "dn_apply_monomial: final integral diverges (exponent " +
          fmt(delta) + " <= alpha_" + std::to_string(m - 1) + " = " +
          fmt(al[m - 1]) + ")");
    }
    coeff *= gamma_quotient(delta - al[m - 1], delta - al[m] + 1.0);
  }
  return PowerRuleResult::term({coeff, delta - al[m]});
}

namespace {

PowerRuleResult power_rule_impl(const DnSequence& seq, double delta,
                                bool check_strip) {
  if (delta <= -1.0) {
    throw DomainError("dn_power_rule: exponent " + fmt(delta) + " <= -1");
  }
  const auto& al = seq.alphas();
  const int m = seq.m();
  for (int k = 0; k < m; ++k) {
    if (is_kernel_power(delta, al[k])) return PowerRuleResult::kernel();
  }
  if (check_strip && !(delta - al[m - 1] > 0.0)) {
    throw UnsupportedDomain(
        "dn_power_rule: closed form requires delta > alpha_{m-1} = " +
        fmt(al[m - 1]) + ", got " + fmt(delta) +
        "; use the composition path");
  }
  const double c = gamma_quotient(delta + 1.0, delta + 1.0 - seq.alpha());
  return PowerRuleResult::term({cplx{c, 0.0}, delta - seq.alpha()});
}

}  // namespace

PowerRuleResult dn_power_rule(const DnSequence& seq, double delta) {
  return power_rule_impl(seq, delta, true);
}

PowerRuleResult dn_power_rule_formal(const DnSequence& seq, double delta) {
  return power_rule_impl(seq, delta, false);
}

PowerRuleResult boundary_apply_monomial(const DnSequence& seq, int j,
                                        const Monomial& input) {
  const int m = seq.m();
  if (j < 0 || j > m - 1) {
    throw IndexError("boundary_apply_monomial: j must lie in [0, " +
                     std::to_string(m - 1) + "], got " + std::to_string(j));
  }
  const double delta = input.exponent;
  if (delta <= -1.0) {
    throw DomainError("boundary_apply_monomial: monomial exponent " +
                      fmt(delta) + " <= -1");
  }
  const auto& al = seq.alphas();
  const auto& g = seq.gammas();
  cplx coeff = input.coeff;
  // D^{alpha_0} = I^{1-gamma_0}: exponent delta -> delta - alpha_0.
  coeff *= gamma_quotient(delta + 1.0, delta - al[0] + 1.0);
  for (int i = 1; i <= j; ++i) {
    // d/dy of y^{delta - alpha_{i-1}}
    if (is_kernel_power(delta, al[i - 1])) return PowerRuleResult::kernel();
    coeff *= delta - al[i - 1];
    // I^{1-gamma_i}
    if (g[i] < 1.0) {
      const double e_in = delta - al[i - 1] - 1.0;
      if (e_in <= -1.0) {
        throw DomainError("boundary_apply_monomial: level " +
                          std::to_string(i) + " integral diverges (exponent " +
                          fmt(delta) + " <= alpha_" + std::to_string(i - 1) +
                          " = " + fmt(al[i - 1]) + ")");
      }
      coeff *= gamma_quotient(delta - al[i - 1], delta - al[i] + 1.0);
    }
  }
  return PowerRuleResult::term({coeff, delta - al[j]});
}

}  // namespace fracdn
