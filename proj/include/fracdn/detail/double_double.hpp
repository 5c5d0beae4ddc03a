#pragma once

#include <cmath>
#include <complex>

namespace fracdn::detail {

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.  Series of strongly
// alternating terms (Kilbas-Saigo at negative real argument) cancel down to
// ~1e-9 of the largest partial sum; a plain double accumulator would leave
// nothing of the result, so the summation loops run on these.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD sub(const DD& a, const DD& b) { return add(a, DD{-b.hi, -b.lo}); }

inline DD mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD mul(const DD& a, double b) {
  DD p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline DD div(const DD& a, const DD& b) {
  const double q1 = a.hi / b.hi;
  DD r = sub(a, mul(b, q1));
  const double q2 = r.hi / b.hi;
  return quick_two_sum(q1, q2);
}

// Complex value with double-double components.
struct DDC {
  DD re;
  DD im;
};

inline DDC add(const DDC& a, const DDC& b) {
  return {add(a.re, b.re), add(a.im, b.im)};
}

inline DDC mul(const DDC& a, const DDC& b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)),
          add(mul(a.re, b.im), mul(a.im, b.re))};
}

inline DDC mul(const DDC& a, const DD& s) {
  return {mul(a.re, s), mul(a.im, s)};
}

inline std::complex<double> to_complex(const DDC& a) {
  return {a.re.value(), a.im.value()};
}

// magnitude estimate; hi parts suffice for stopping-rule comparisons
inline double abs_estimate(const DDC& a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace fracdn::detail
