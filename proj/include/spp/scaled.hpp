#ifndef SPP_SCALED_HPP
#define SPP_SCALED_HPP

#include <cmath>
#include <complex>
#include <cstdint>

// Floating-point values with an explicit base-2 exponent, so products of
// transfer-matrix elements and Chebyshev values stay representable far past
// the double range (deep fractal stages push |m22| to 10^1e5 and beyond).
// Mantissas are kept in frexp normal form, so scaling is exact.

namespace spp {

struct ScaledReal {
  double frac = 0.0;  // 0, or |frac| in [0.5, 1)
  std::int64_t exp2 = 0;

  static ScaledReal from(double v) {
    ScaledReal r;
    if (v == 0.0) return r;
    int e;
    r.frac = std::frexp(v, &e);
    r.exp2 = e;
    return r;
  }

  // sign * 2^(ln_abs / ln 2); used where only a log of the target is known
  static ScaledReal from_log2_abs(double log2_abs, int sign) {
    ScaledReal r;
    if (sign == 0) return r;
    double fl = std::floor(log2_abs);
    r.exp2 = static_cast<std::int64_t>(fl) + 1;
    r.frac = sign * std::exp2(log2_abs - fl - 1.0);  // in [0.5, 1)
    return r;
  }

  double value() const {
    if (frac == 0.0) return 0.0;
    if (exp2 > 1024) return frac > 0 ? HUGE_VAL : -HUGE_VAL;
    if (exp2 < -1074) return 0.0;
    return std::ldexp(frac, static_cast<int>(exp2));
  }

  int sign() const { return frac > 0 ? 1 : (frac < 0 ? -1 : 0); }
  bool is_zero() const { return frac == 0.0; }

  double log2_abs() const {
    return std::log2(std::fabs(frac)) + static_cast<double>(exp2);
  }
  double log10_abs() const { return log2_abs() * 0.30102999566398119521; }

  ScaledReal abs() const { return {std::fabs(frac), exp2}; }

  friend ScaledReal operator-(const ScaledReal& a) { return {-a.frac, a.exp2}; }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ScaledReal r = ScaledReal::from(a.frac * b.frac);
    r.exp2 += a.exp2 + b.exp2;
    return r;
  }

  friend ScaledReal operator*(const ScaledReal& a, double b) {
    return a * ScaledReal::from(b);
  }

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledReal& hi = (a.exp2 >= b.exp2) ? a : b;
    const ScaledReal& lo = (a.exp2 >= b.exp2) ? b : a;
    std::int64_t d = hi.exp2 - lo.exp2;
    if (d > 1075) return hi;
    ScaledReal r = ScaledReal::from(hi.frac + std::ldexp(lo.frac, -static_cast<int>(d)));
    r.exp2 += hi.exp2;
    return r;
  }

  friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return a + (-b); }

  // a/b; b must be nonzero
  friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return {};
    ScaledReal r = ScaledReal::from(a.frac / b.frac);
    r.exp2 += a.exp2 - b.exp2;
    return r;
  }

  // comparison of |a| vs |b|
  bool abs_less(const ScaledReal& o) const {
    if (is_zero()) return !o.is_zero();
    if (o.is_zero()) return false;
    if (exp2 != o.exp2) return exp2 < o.exp2;
    return std::fabs(frac) < std::fabs(o.frac);
  }
};

// complex value frac * 2^exp2 with max(|re|,|im|) kept in [0.5, 1)
struct ScaledComplex {
  std::complex<double> frac{0.0, 0.0};
  std::int64_t exp2 = 0;

  static ScaledComplex normalize(std::complex<double> v, std::int64_t e) {
    ScaledComplex r;
    double m = std::max(std::fabs(v.real()), std::fabs(v.imag()));
    if (m == 0.0) return r;
    int ee;
    std::frexp(m, &ee);
    r.frac = {std::ldexp(v.real(), -ee), std::ldexp(v.imag(), -ee)};
    r.exp2 = e + ee;
    return r;
  }

  static ScaledComplex from(std::complex<double> v) { return normalize(v, 0); }

  bool is_zero() const { return frac == std::complex<double>(0.0, 0.0); }

  std::complex<double> value() const {
    if (is_zero()) return {0.0, 0.0};
    if (exp2 > 1024) {
      double s = HUGE_VAL;
      return {frac.real() * s, frac.imag() * s};
    }
    if (exp2 < -1074) return {0.0, 0.0};
    return {std::ldexp(frac.real(), static_cast<int>(exp2)),
            std::ldexp(frac.imag(), static_cast<int>(exp2))};
  }

  ScaledReal abs() const {
    ScaledReal r = ScaledReal::from(std::abs(frac));
    r.exp2 += exp2;
    return r;
  }
  double arg() const { return std::arg(frac); }
  double log10_abs() const { return abs().log10_abs(); }

  ScaledComplex conj() const { return {std::conj(frac), exp2}; }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return normalize(a.frac * b.frac, a.exp2 + b.exp2);
  }

  friend ScaledComplex operator*(const ScaledComplex& a, std::complex<double> c) {
    return a * ScaledComplex::from(c);
  }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledReal& s) {
    if (a.is_zero() || s.is_zero()) return {};
    return normalize(a.frac * s.frac, a.exp2 + s.exp2);
  }

  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return {};
    return normalize(a.frac / b.frac, a.exp2 - b.exp2);
  }

  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledComplex& hi = (a.exp2 >= b.exp2) ? a : b;
    const ScaledComplex& lo = (a.exp2 >= b.exp2) ? b : a;
    std::int64_t d = hi.exp2 - lo.exp2;
    if (d > 1075) return hi;
    std::complex<double> s = hi.frac + std::complex<double>(
        std::ldexp(lo.frac.real(), -static_cast<int>(d)),
        std::ldexp(lo.frac.imag(), -static_cast<int>(d)));
    return normalize(s, hi.exp2);
  }

  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
    return a + ScaledComplex{-b.frac, b.exp2};
  }
};

}  // namespace spp

#endif
