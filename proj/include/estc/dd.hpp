#pragma once

// Double-double arithmetic: an unevaluated sum of two doubles giving
// roughly 32 significant decimal digits.  Algorithms follow the classic
// error-free transformations (Dekker/Knuth two_sum, FMA-based two_prod)
// used by the QD library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <stdexcept>

namespace estc {

namespace detail {

inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

// requires |a| >= |b|
inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace detail

struct ddouble {
  double hi = 0.0;
  double lo = 0.0;

  constexpr ddouble() = default;
  constexpr ddouble(double h) : hi(h), lo(0.0) {}
  constexpr ddouble(double h, double l) : hi(h), lo(l) {}
  constexpr ddouble(int v) : hi(v), lo(0.0) {}

  explicit operator double() const { return hi; }

  static ddouble eps() { return ddouble(4.93038065763132e-32); }  // 2^-104
};

inline double to_double(const ddouble& a) { return a.hi; }

inline ddouble operator+(const ddouble& a, const ddouble& b) {
  double s1, s2, t1, t2;
  s1 = detail::two_sum(a.hi, b.hi, s2);
  t1 = detail::two_sum(a.lo, b.lo, t2);
  s2 += t1;
  s1 = detail::quick_two_sum(s1, s2, s2);
  s2 += t2;
  s1 = detail::quick_two_sum(s1, s2, s2);
  return ddouble(s1, s2);
}

inline ddouble operator-(const ddouble& a) { return ddouble(-a.hi, -a.lo); }
inline ddouble operator-(const ddouble& a, const ddouble& b) { return a + (-b); }

inline ddouble operator*(const ddouble& a, const ddouble& b) {
  double p1, p2;
  p1 = detail::two_prod(a.hi, b.hi, p2);
  p2 += a.hi * b.lo + a.lo * b.hi;
  p1 = detail::quick_two_sum(p1, p2, p2);
  return ddouble(p1, p2);
}

inline ddouble operator/(const ddouble& a, const ddouble& b) {
  double q1 = a.hi / b.hi;
  ddouble r = a - b * ddouble(q1);
  double q2 = r.hi / b.hi;
  r = r - b * ddouble(q2);
  double q3 = r.hi / b.hi;
  double s, e;
  s = detail::quick_two_sum(q1, q2, e);
  ddouble q(s, e);
  return q + ddouble(q3);
}

inline ddouble& operator+=(ddouble& a, const ddouble& b) { a = a + b; return a; }
inline ddouble& operator-=(ddouble& a, const ddouble& b) { a = a - b; return a; }
inline ddouble& operator*=(ddouble& a, const ddouble& b) { a = a * b; return a; }
inline ddouble& operator/=(ddouble& a, const ddouble& b) { a = a / b; return a; }

inline bool operator==(const ddouble& a, const ddouble& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const ddouble& a, const ddouble& b) { return !(a == b); }
inline bool operator<(const ddouble& a, const ddouble& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const ddouble& a, const ddouble& b) { return b < a; }
inline bool operator<=(const ddouble& a, const ddouble& b) { return !(b < a); }
inline bool operator>=(const ddouble& a, const ddouble& b) { return !(a < b); }

inline ddouble fabs(const ddouble& a) { return (a.hi < 0.0) ? -a : a; }
inline ddouble abs(const ddouble& a) { return fabs(a); }

inline ddouble sqrt(const ddouble& a) {
  // Karp's method: one Newton step from the double estimate.
  if (a.hi == 0.0 && a.lo == 0.0) return ddouble(0.0);
  if (a.hi < 0.0) throw std::domain_error("ddouble sqrt of negative value");
  double x = 1.0 / std::sqrt(a.hi);
  double ax = a.hi * x;
  ddouble axd(ax);
  ddouble err = a - axd * axd;
  return axd + ddouble(err.hi * (x * 0.5));
}

inline ddouble max(const ddouble& a, const ddouble& b) { return a < b ? b : a; }
inline ddouble min(const ddouble& a, const ddouble& b) { return a < b ? a : b; }

inline ddouble ldexp(const ddouble& a, int n) {
  return ddouble(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

// powers of ten, exact binary splitting
inline ddouble dd_pow10(int n) {
  bool neg = n < 0;
  if (neg) n = -n;
  ddouble r(1.0), base(10.0);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return neg ? ddouble(1.0) / r : r;
}

// decimal string with `ndigits` significant digits, scientific format
inline std::string to_string(const ddouble& a, int ndigits = 33) {
  if (std::isnan(a.hi)) return "nan";
  if (std::isinf(a.hi)) return a.hi > 0 ? "inf" : "-inf";
  if (a.hi == 0.0 && a.lo == 0.0) return "0";
  ddouble v = fabs(a);
  int e10 = static_cast<int>(std::floor(std::log10(v.hi)));
  ddouble scaled = v / dd_pow10(e10);
  // correct the exponent estimate
  while (scaled.hi >= 10.0) { scaled = scaled / ddouble(10.0); ++e10; }
  while (scaled.hi < 1.0) { scaled = scaled * ddouble(10.0); --e10; }
  std::string digits;
  digits.reserve(ndigits + 1);
  for (int i = 0; i < ndigits + 1; ++i) {
    int d = static_cast<int>(scaled.hi);
    if (d < 0) d = 0;
    if (d > 9) d = 9;
    digits.push_back(static_cast<char>('0' + d));
    scaled = (scaled - ddouble(static_cast<double>(d))) * ddouble(10.0);
    if (scaled.hi < 0.0) scaled = ddouble(0.0);  // clamp rounding noise
  }
  // round the guard digit
  if (digits.back() >= '5') {
    digits.pop_back();
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0) {
      if (digits[i] == '9') { digits[i] = '0'; --i; }
      else { ++digits[i]; break; }
    }
    if (i < 0) { digits.insert(digits.begin(), '1'); digits.pop_back(); ++e10; }
  } else {
    digits.pop_back();
  }
  std::string out;
  if (a.hi < 0.0) out.push_back('-');
  out.push_back(digits[0]);
  out.push_back('.');
  out.append(digits.begin() + 1, digits.end());
  char expbuf[16];
  std::snprintf(expbuf, sizeof expbuf, "e%+03d", e10);
  out += expbuf;
  return out;
}

inline ddouble dd_from_string(const std::string& s) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = s[i] == '-'; ++i; }
  ddouble val(0.0);
  int frac_digits = 0;
  bool seen_digit = false, in_frac = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      val = val * ddouble(10.0) + ddouble(static_cast<double>(c - '0'));
      if (in_frac) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !in_frac) {
      in_frac = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("ddouble parse: no digits in '" + s + "'");
  int e10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    e10 = std::stoi(s.substr(i + 1));
    i = s.size();
  }
  val = val * dd_pow10(e10 - frac_digits);
  return neg ? -val : val;
}

// double forwarders so unqualified calls resolve uniformly for both scalars
inline double sqrt(double x) { return std::sqrt(x); }
inline double fabs(double x) { return std::fabs(x); }
inline double max(double a, double b) { return a > b ? a : b; }
inline double min(double a, double b) { return a < b ? a : b; }

// scalar-trait helpers shared by the templated numerical core
template <class R> struct real_traits;

template <> struct real_traits<double> {
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static double epsilon() { return std::numeric_limits<double>::epsilon(); }
  static std::string to_string(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static const char* name() { return "standard"; }
};

template <> struct real_traits<ddouble> {
  static ddouble from_double(double x) { return ddouble(x); }
  static double to_double(const ddouble& x) { return x.hi; }
  static ddouble epsilon() { return ddouble::eps(); }
  static std::string to_string(const ddouble& x) { return estc::to_string(x); }
  static const char* name() { return "extended"; }
};

}  // namespace estc
