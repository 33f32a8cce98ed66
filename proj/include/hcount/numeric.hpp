#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hcount {

// expression templates off: plain value semantics throughout
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rat =
    boost::multiprecision::number<boost::multiprecision::rational_adaptor<
                                      boost::multiprecision::cpp_int_backend<>>,
                                  boost::multiprecision::et_off>;

inline BigInt num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline BigInt den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline int sgn(const BigInt& x) { return x.sign(); }
inline int sgn(const Rat& x) { return x.sign(); }

inline BigInt abs_int(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline Rat abs_rat(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Largest n with n^2 <= x.  x must be nonnegative.
inline BigInt isqrt(const BigInt& x) {
  if (x < 0) throw std::invalid_argument("isqrt of negative value");
  return boost::multiprecision::sqrt(x);
}

inline bool is_square(const BigInt& x, BigInt* root = nullptr) {
  if (x < 0) return false;
  BigInt r = isqrt(x);
  if (r * r != x) return false;
  if (root) *root = r;
  return true;
}

// x = k^2 * m with m squarefree; returns m and sets k.  Trial division,
// adequate for the discriminant magnitudes this library works at.
inline BigInt squarefree_kernel(BigInt x, BigInt* square_part = nullptr) {
  if (x == 0) throw std::invalid_argument("squarefree_kernel of 0");
  BigInt k = 1;
  int s = x < 0 ? -1 : 1;
  x = abs_int(x);
  for (BigInt p = 2; p * p <= x; ++p) {
    while (x % (p * p) == 0) {
      x /= p * p;
      k *= p;
    }
  }
  if (square_part) *square_part = k;
  return s * x;
}

inline BigInt floor_rat(const Rat& x) {
  BigInt q = num(x) / den(x);
  if (num(x) < 0 && q * den(x) != num(x)) --q;
  return q;
}

inline BigInt ceil_rat(const Rat& x) { return -floor_rat(-x); }

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

inline Rat pow_rat(const Rat& x, long e) {
  if (e < 0) {
    if (x == 0) throw std::invalid_argument("pow_rat: 0^negative");
    return Rat(1) / pow_rat(x, -e);
  }
  Rat r = 1, b = x;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace hcount
