#pragma once

#include <vector>

#include "hcount/interval.hpp"
#include "hcount/numeric.hpp"

namespace hcount {

// Polynomials are coefficient vectors in ascending degree order with a
// nonzero leading coefficient (the zero polynomial is the empty vector).
using ZPoly = std::vector<BigInt>;
using QPoly = std::vector<Rat>;

QPoly to_qpoly(const ZPoly& f);
int degree(const QPoly& f);  // -1 for the zero polynomial
void normalize(QPoly& f);

Rat eval(const QPoly& f, const Rat& x);
Interval eval(const QPoly& f, const Interval& x, int digits = 30);
QPoly derivative(const QPoly& f);
QPoly add(const QPoly& f, const QPoly& g);
QPoly mul(const QPoly& f, const QPoly& g);
QPoly scale(const QPoly& f, const Rat& c);
// Division with remainder; g must be nonzero.
void divmod(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r);
QPoly poly_gcd(QPoly f, QPoly g);  // monic gcd
QPoly squarefree_part(const QPoly& f);

// 1 + max |c_i / c_deg|: all real and complex roots have modulus below it.
Rat cauchy_bound(const QPoly& f);

// Number of distinct real roots in (a, b], by Sturm's theorem.
// f must be squarefree.
int sturm_count(const QPoly& f, const Rat& a, const Rat& b);
int count_real_roots(const QPoly& f);  // distinct real roots of squarefree f

// One real algebraic number: either an exact rational or the unique root of
// a squarefree polynomial in (lo, hi) with sign change across the interval.
struct RealRoot {
  QPoly f;
  Rat lo{0}, hi{0};
  bool exact = false;
  Rat value{0};

  void refine_below(const Rat& width);
  Interval iv() const { return exact ? Interval(value) : Interval(lo, hi); }
  Interval iv(const Rat& width) {
    refine_below(width);
    return iv();
  }
};

// Isolating intervals for all distinct real roots of f, in increasing order.
// f need not be squarefree; multiplicities are discarded.
std::vector<RealRoot> isolate_real_roots(const QPoly& f);

// Certified enclosure of one non-real root (imaginary part positive).
struct ComplexRoot {
  Interval re, im;
};

// Enclosures of all roots of a squarefree integer polynomial: the real ones
// via Sturm bisection, the non-real ones (upper half plane representatives)
// via a floating-point solve certified by a root-distance bound and a
// disjointness count.  Throws if certification fails at maximum precision.
struct RootDecomposition {
  std::vector<RealRoot> real_roots;
  std::vector<ComplexRoot> complex_roots;  // im > 0, one per conjugate pair
};
RootDecomposition isolate_all_roots(const ZPoly& f);

// Irreducibility over Q of a monic integer polynomial, by rational root
// checks and a bounded search over monic integer factors (Mignotte bound).
// Throws if the search space exceeds the trial cap, which does not happen
// at the degrees this library is used at.
bool is_irreducible_monic(const ZPoly& f);

BigInt poly_disc(const ZPoly& f);  // discriminant via exact resultant

}  // namespace hcount
