#pragma once

#include <optional>

#include "hcount/interval.hpp"
#include "hcount/numeric.hpp"

namespace hcount {

// Exact element a + b*sqrt(M) of a real quadratic extension of Q.
// M is a nonnegative integer; if M is a perfect square the value is folded
// into the rational part at construction, so b != 0 implies sqrt(M) is
// irrational.  All comparisons are exact.
struct Quad {
  Rat a, b;
  BigInt M;

  Quad() : a(0), b(0), M(0) {}
  Quad(Rat x) : a(std::move(x)), b(0), M(0) {}  // NOLINT: implicit by design
  Quad(long x) : a(x), b(0), M(0) {}            // NOLINT
  Quad(Rat ra, Rat rb, BigInt m) : a(std::move(ra)), b(std::move(rb)), M(std::move(m)) {
    if (M < 0) throw std::invalid_argument("Quad: negative radicand");
    BigInt r;
    if (b == 0) {
      M = 0;
    } else if (is_square(M, &r)) {
      a += b * Rat(r);
      b = 0;
      M = 0;
    }
  }

  bool is_rational() const { return b == 0; }

  static BigInt merge_radicand(const Quad& x, const Quad& y) {
    if (x.b == 0) return y.M;
    if (y.b == 0) return x.M;
    if (x.M != y.M)
      throw std::invalid_argument("Quad: mixed radicands");
    return x.M;
  }

  int sign() const {
    if (b == 0) return sgn(a);
    if (a == 0) return sgn(b);
    if (sgn(a) == sgn(b)) return sgn(a);
    // a and b have opposite signs: compare a^2 with b^2 M.
    int c = (a * a).compare(b * b * Rat(M));
    if (c == 0) return 0;  // only possible when sqrt(M) rational; normalized away
    return c > 0 ? sgn(a) : sgn(b);
  }

  Interval enclosure(int digits = 30) const {
    if (b == 0) return Interval(a);
    Interval s = iv_sqrt(Rat(M), digits);
    return Interval(a) + Rat(b) * s;
  }
};

inline Quad operator+(const Quad& x, const Quad& y) {
  return {x.a + y.a, x.b + y.b, Quad::merge_radicand(x, y)};
}
inline Quad operator-(const Quad& x) { return {-x.a, -x.b, x.M}; }
inline Quad operator-(const Quad& x, const Quad& y) { return x + (-y); }
inline Quad operator*(const Quad& x, const Quad& y) {
  BigInt m = Quad::merge_radicand(x, y);
  return {x.a * y.a + x.b * y.b * Rat(m), x.a * y.b + x.b * y.a, m};
}
inline Quad inverse(const Quad& x) {
  Rat n = x.a * x.a - x.b * x.b * Rat(x.M);
  if (n == 0) throw std::domain_error("Quad: division by zero");
  return {x.a / n, -x.b / n, x.M};
}
inline Quad operator/(const Quad& x, const Quad& y) { return x * inverse(y); }

inline Quad& operator+=(Quad& x, const Quad& y) { return x = x + y; }
inline Quad& operator-=(Quad& x, const Quad& y) { return x = x - y; }
inline Quad& operator*=(Quad& x, const Quad& y) { return x = x * y; }

inline bool operator==(const Quad& x, const Quad& y) {
  return x.a == y.a && x.b == y.b && (x.b == 0 || x.M == y.M);
}
inline bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
inline bool operator<(const Quad& x, const Quad& y) {
  return (x - y).sign() < 0;
}
inline bool operator<=(const Quad& x, const Quad& y) {
  return (x - y).sign() <= 0;
}
inline bool operator>(const Quad& x, const Quad& y) { return y < x; }
inline bool operator>=(const Quad& x, const Quad& y) { return y <= x; }

inline Quad quad_abs(const Quad& x) { return x.sign() < 0 ? -x : x; }
inline Quad quad_max(const Quad& x, const Quad& y) { return x < y ? y : x; }
inline Quad quad_conj(const Quad& x) { return {x.a, -x.b, x.M}; }

// Exact floor.  sqrt(M) is irrational whenever b != 0, so the floor is
// always decidable by refining the radical enclosure.
inline BigInt quad_floor(const Quad& x) {
  if (x.b == 0) return floor_rat(x.a);
  for (int digits = 30;; digits *= 2) {
    Interval e = x.enclosure(digits);
    BigInt f = floor_rat(e.lo);
    if (f == floor_rat(e.hi)) return f;
    if (digits > 2000)
      throw std::runtime_error("quad_floor: failed to separate");
  }
}

inline BigInt quad_ceil(const Quad& x) { return -quad_floor(-x); }

inline double to_double(const Quad& x) {
  Interval e = x.enclosure(20);
  return to_double(e.mid());
}

}  // namespace hcount
