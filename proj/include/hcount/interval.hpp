#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <optional>

#include "hcount/numeric.hpp"

namespace hcount {

// Closed interval with rational endpoints.  All operations round outward,
// so a value known to lie in the inputs lies in the output.
struct Interval {
  Rat lo, hi;

  Interval() : lo(0), hi(0) {}
  explicit Interval(const Rat& x) : lo(x), hi(x) {}
  Interval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }

  // Sign if decidable from the enclosure alone, otherwise nullopt.
  std::optional<int> sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (lo == 0 && hi == 0) return 0;
    return std::nullopt;
  }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) {
  return a + (-b);
}
inline Interval operator*(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
inline Interval operator*(const Rat& c, const Interval& a) {
  return Interval(c) * a;
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0)
    throw std::domain_error("Interval division by interval containing 0");
  Rat c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}
inline Interval iv_abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {Rat(0), std::max(-a.lo, a.hi)};
}
inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// true when every point of a is strictly below every point of b.
inline bool certainly_less(const Interval& a, const Interval& b) {
  return a.hi < b.lo;
}
inline bool certainly_leq(const Interval& a, const Interval& b) {
  return a.hi <= b.lo;
}

// ---- enclosures of irrational constants and functions --------------------
//
// Computed in 100-decimal-digit binary floats and padded outward.  The pad
// is far coarser than the working precision, so the results are honest
// enclosures for any `digits` up to ~90.

namespace detail {

using BF = boost::multiprecision::cpp_bin_float_100;

inline Rat bf_to_rat(const BF& x) {
  // A binary float is exactly a rational.
  return x.convert_to<Rat>();
}

inline Rat pad_for(const BF& magnitude, int digits) {
  BF scale = boost::multiprecision::fabs(magnitude) + 1;
  BF p = scale * boost::multiprecision::pow(BF(10), -digits);
  return bf_to_rat(p);
}

}  // namespace detail

// Enclosure of sqrt(x) for rational x >= 0, with width <= ~10^-digits.
// Uses exact integer square roots of a scaled numerator, so the bounds are
// rigorous regardless of float behavior.
inline Interval iv_sqrt(const Rat& x, int digits = 30) {
  if (x < 0) throw std::domain_error("iv_sqrt of negative");
  if (x == 0) return Interval(Rat(0));
  // sqrt(n/d) = sqrt(n*d)/d.  Scale by 4^k to get the precision.
  BigInt n = num(x) * den(x);
  BigInt d = den(x);
  long bits = static_cast<long>(digits * 3.33) + 4;
  BigInt scale = BigInt(1) << (2 * bits);
  BigInt r = isqrt(n * scale);  // r^2 <= n*4^bits < (r+1)^2
  Rat lo(r, d * (BigInt(1) << bits));
  Rat hi(r + 1, d * (BigInt(1) << bits));
  return {lo, hi};
}

inline Interval iv_sqrt(const Interval& x, int digits = 30) {
  Rat lo = x.lo < 0 ? Rat(0) : x.lo;
  if (x.hi < 0) throw std::domain_error("iv_sqrt of negative interval");
  return {iv_sqrt(lo, digits).lo, iv_sqrt(x.hi, digits).hi};
}

inline Interval iv_pi(int digits = 30) {
  detail::BF p = 4 * boost::multiprecision::atan(detail::BF(1));
  Rat pad = detail::pad_for(p, std::min(digits, 90));
  Rat v = detail::bf_to_rat(p);
  return {v - pad, v + pad};
}

inline Interval iv_log(const Rat& x, int digits = 30) {
  if (x <= 0) throw std::domain_error("iv_log of nonpositive");
  detail::BF v = boost::multiprecision::log(detail::BF(x.convert_to<detail::BF>()));
  Rat pad = detail::pad_for(v, std::min(digits, 90));
  Rat r = detail::bf_to_rat(v);
  return {r - pad, r + pad};
}

inline Interval iv_log(const Interval& x, int digits = 30) {
  return {iv_log(x.lo, digits).lo, iv_log(x.hi, digits).hi};
}

inline Interval iv_exp(const Rat& x, int digits = 30) {
  detail::BF v = boost::multiprecision::exp(detail::BF(x.convert_to<detail::BF>()));
  Rat pad = detail::pad_for(v, std::min(digits, 90));
  Rat r = detail::bf_to_rat(v);
  if (r - pad <= 0) return {r / 2, r + pad};
  return {r - pad, r + pad};
}

inline Interval iv_exp(const Interval& x, int digits = 30) {
  return {iv_exp(x.lo, digits).lo, iv_exp(x.hi, digits).hi};
}

// x^(p/q) for rational x > 0 and integer p, q > 0.
inline Interval iv_pow(const Rat& x, long p, long q, int digits = 30) {
  if (x <= 0) throw std::domain_error("iv_pow of nonpositive base");
  if (q <= 0) throw std::invalid_argument("iv_pow: q must be positive");
  if (q == 1) return Interval(pow_rat(x, p));
  if (q == 2) {
    Interval s = iv_sqrt(pow_rat(x, std::abs(p)), digits);
    if (p >= 0) return s;
    return Interval(Rat(1)) / s;
  }
  Interval lx = iv_log(x, digits + 10);
  return iv_exp(Rat(p, q) * lx, digits);
}

}  // namespace hcount
