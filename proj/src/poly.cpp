#include "hcount/poly.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>

namespace hcount {

QPoly to_qpoly(const ZPoly& f) {
  QPoly g(f.size());
  for (size_t i = 0; i < f.size(); ++i) g[i] = Rat(f[i]);
  return g;
}

int degree(const QPoly& f) { return static_cast<int>(f.size()) - 1; }

void normalize(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Rat eval(const QPoly& f, const Rat& x) {
  Rat r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

Interval eval(const QPoly& f, const Interval& x, int) {
  Interval r{Rat(0), Rat(0)};
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    r = r * x + Interval(*it);
  return r;
}

QPoly derivative(const QPoly& f) {
  if (f.size() <= 1) return {};
  QPoly g(f.size() - 1);
  for (size_t i = 1; i < f.size(); ++i) g[i - 1] = f[i] * Rat(BigInt(i));
  return g;
}

QPoly add(const QPoly& f, const QPoly& g) {
  QPoly r(std::max(f.size(), g.size()), Rat(0));
  for (size_t i = 0; i < f.size(); ++i) r[i] += f[i];
  for (size_t i = 0; i < g.size(); ++i) r[i] += g[i];
  normalize(r);
  return r;
}

QPoly mul(const QPoly& f, const QPoly& g) {
  if (f.empty() || g.empty()) return {};
  QPoly r(f.size() + g.size() - 1, Rat(0));
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) r[i + j] += f[i] * g[j];
  return r;
}

QPoly scale(const QPoly& f, const Rat& c) {
  if (c == 0) return {};
  QPoly r = f;
  for (auto& x : r) x *= c;
  return r;
}

void divmod(const QPoly& f, const QPoly& g, QPoly& q, QPoly& r) {
  if (g.empty()) throw std::domain_error("polynomial division by zero");
  r = f;
  q.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, Rat(0));
  const Rat& lg = g.back();
  while (r.size() >= g.size() && !r.empty()) {
    size_t shift = r.size() - g.size();
    Rat c = r.back() / lg;
    q[shift] = c;
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
    // the leading term cancels exactly
    r.pop_back();
    normalize(r);
    if (r.size() < g.size()) break;
  }
  normalize(q);
}

QPoly poly_gcd(QPoly f, QPoly g) {
  normalize(f);
  normalize(g);
  while (!g.empty()) {
    QPoly q, r;
    divmod(f, g, q, r);
    f = std::move(g);
    g = std::move(r);
  }
  if (!f.empty() && f.back() != 1) {
    Rat inv = Rat(1) / f.back();
    for (auto& c : f) c *= inv;
  }
  return f;
}

QPoly squarefree_part(const QPoly& f) {
  if (degree(f) <= 1) return f;
  QPoly g = poly_gcd(f, derivative(f));
  if (degree(g) == 0) return f;
  QPoly q, r;
  divmod(f, g, q, r);
  return q;
}

Rat cauchy_bound(const QPoly& f) {
  if (f.empty()) throw std::domain_error("cauchy_bound of zero polynomial");
  Rat m = 0;
  for (size_t i = 0; i + 1 < f.size(); ++i)
    m = std::max(m, abs_rat(f[i] / f.back()));
  return m + 1;
}

namespace {

std::vector<QPoly> sturm_sequence(const QPoly& f) {
  std::vector<QPoly> s;
  s.push_back(f);
  s.push_back(derivative(f));
  while (!s.back().empty() && degree(s.back()) > 0) {
    QPoly q, r;
    divmod(s[s.size() - 2], s.back(), q, r);
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    s.push_back(std::move(r));
  }
  return s;
}

int sign_variations(const std::vector<QPoly>& s, const Rat& x) {
  int v = 0, prev = 0;
  for (const auto& p : s) {
    int sg = sgn(eval(p, x));
    if (sg != 0) {
      if (prev != 0 && sg != prev) ++v;
      prev = sg;
    }
  }
  return v;
}

}  // namespace

int sturm_count(const QPoly& f, const Rat& a, const Rat& b) {
  auto s = sturm_sequence(f);
  return sign_variations(s, a) - sign_variations(s, b);
}

int count_real_roots(const QPoly& f) {
  Rat b = cauchy_bound(f);
  return sturm_count(f, -b, b);
}

void RealRoot::refine_below(const Rat& width) {
  if (exact) return;
  while (hi - lo >= width) {
    Rat m = (lo + hi) / 2;
    Rat v = eval(f, m);
    if (v == 0) {
      exact = true;
      value = m;
      return;
    }
    if (sgn(v) == sgn(eval(f, lo)))
      lo = m;
    else
      hi = m;
  }
}

namespace {

// All rational roots of a nonzero rational polynomial, found by clearing
// denominators and testing divisor candidates.
std::vector<BigInt> divisors_of(BigInt n) {
  n = abs_int(n);
  std::vector<BigInt> divs{1};
  for (BigInt p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) {
      size_t base = divs.size();
      BigInt pk = 1;
      for (int k = 1; k <= e; ++k) {
        pk *= p;
        for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
      }
    }
    if (divs.size() > 100000)
      throw std::runtime_error("divisor enumeration too large");
  }
  if (n > 1) {
    size_t base = divs.size();
    for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * n);
  }
  return divs;
}

std::vector<Rat> rational_roots(const QPoly& f0) {
  QPoly f = f0;
  BigInt lcm = 1;
  for (const auto& c : f) lcm = boost::multiprecision::lcm(lcm, den(c));
  ZPoly zf(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Rat c = f[i] * Rat(lcm);
    zf[i] = num(c);
  }
  std::vector<Rat> roots;
  size_t low = 0;
  while (low < zf.size() && zf[low] == 0) ++low;
  if (low == zf.size()) throw std::domain_error("rational_roots of zero poly");
  if (low > 0) roots.push_back(Rat(0));
  auto ps = divisors_of(zf[low]);
  auto qs = divisors_of(zf.back());
  for (const auto& p : ps)
    for (const auto& q : qs) {
      for (int s : {1, -1}) {
        Rat cand(s * p, q);
        if (eval(f0, cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  return roots;
}

QPoly deflate(QPoly f, const Rat& root) {
  QPoly lin{-root, Rat(1)};
  QPoly q, r;
  divmod(f, lin, q, r);
  if (!r.empty()) throw std::logic_error("deflate: not a root");
  return q;
}

}  // namespace

std::vector<RealRoot> isolate_real_roots(const QPoly& f0) {
  QPoly f = squarefree_part(f0);
  if (degree(f) < 1) return {};
  std::vector<RealRoot> out;
  for (const Rat& r : rational_roots(f)) {
    RealRoot rr;
    rr.exact = true;
    rr.value = r;
    out.push_back(std::move(rr));
    f = deflate(f, r);
  }
  if (degree(f) >= 1) {
    // f now has no rational roots, so rational bisection points are safe.
    auto s = sturm_sequence(f);
    Rat B = cauchy_bound(f);
    struct Seg {
      Rat a, b;
      int va, vb;
    };
    std::vector<Seg> stack{{-B, B, sign_variations(s, -B), sign_variations(s, B)}};
    while (!stack.empty()) {
      Seg seg = stack.back();
      stack.pop_back();
      int count = seg.va - seg.vb;
      if (count == 0) continue;
      if (count == 1) {
        RealRoot rr;
        rr.f = f;
        rr.lo = seg.a;
        rr.hi = seg.b;
        out.push_back(std::move(rr));
        continue;
      }
      Rat m = (seg.a + seg.b) / 2;
      int vm = sign_variations(s, m);
      stack.push_back({seg.a, m, seg.va, vm});
      stack.push_back({m, seg.b, vm, seg.vb});
    }
  }
  auto key = [](RealRoot& r) { return r.exact ? r.value : (r.lo + r.hi) / 2; };
  std::sort(out.begin(), out.end(),
            [&](RealRoot a, RealRoot b) { return key(a) < key(b); });
  return out;
}

// ---- certified complex enclosures -----------------------------------------

namespace {

using BF = boost::multiprecision::cpp_bin_float_100;

struct CF {
  BF re, im;
};
CF operator+(const CF& a, const CF& b) { return {a.re + b.re, a.im + b.im}; }
CF operator-(const CF& a, const CF& b) { return {a.re - b.re, a.im - b.im}; }
CF operator*(const CF& a, const CF& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CF operator/(const CF& a, const CF& b) {
  BF n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
BF cf_abs(const CF& a) {
  return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im);
}

CF eval_cf(const QPoly& f, const CF& z) {
  CF r{BF(0), BF(0)};
  for (auto it = f.rbegin(); it != f.rend(); ++it)
    r = r * z + CF{BF(it->convert_to<BF>()), BF(0)};
  return r;
}

Rat bf_to_rat(const BF& x) { return x.convert_to<Rat>(); }

}  // namespace

RootDecomposition isolate_all_roots(const ZPoly& zf) {
  QPoly f = to_qpoly(zf);
  if (degree(poly_gcd(f, derivative(f))) > 0)
    throw std::invalid_argument("isolate_all_roots: polynomial not squarefree");
  RootDecomposition out;
  out.real_roots = isolate_real_roots(f);
  int d = degree(f);
  int r = static_cast<int>(out.real_roots.size());
  int s2 = d - r;
  if (s2 % 2 != 0) throw std::logic_error("real root count parity");
  int s = s2 / 2;
  if (s == 0) return out;

  // Keep the real isolating intervals narrow so disjointness from the
  // complex boxes is easy to certify.
  for (auto& rr : out.real_roots) rr.refine_below(Rat(1, BigInt(1) << 64));

  QPoly fp = derivative(f);
  Rat B = cauchy_bound(f);
  for (int attempt = 0; attempt < 4; ++attempt) {
    // Durand-Kerner from points spread on a circle, slightly rotated per
    // attempt so a bad starting symmetry cannot persist.
    std::vector<CF> z(d);
    BF radius = B.convert_to<BF>() / 2 + 1;
    for (int j = 0; j < d; ++j) {
      double ang = 2 * 3.141592653589793 * (j + 0.3 + 0.13 * attempt) / d + 0.5;
      z[j] = CF{radius * BF(std::cos(ang)), radius * BF(std::sin(ang))};
    }
    int iters = 120 + 40 * d + 100 * attempt;
    for (int it = 0; it < iters; ++it) {
      for (int j = 0; j < d; ++j) {
        CF denom{BF(1), BF(0)};
        for (int k = 0; k < d; ++k)
          if (k != j) denom = denom * (z[j] - z[k]);
        CF delta = eval_cf(f, z[j]) / denom;
        z[j] = z[j] - delta;
      }
    }
    // Candidate non-real roots in the upper half plane.
    std::vector<ComplexRoot> boxes;
    bool ok = true;
    for (int j = 0; j < d && ok; ++j) {
      if (z[j].im <= 0) continue;
      BF fv = cf_abs(eval_cf(f, z[j]));
      BF fpv = cf_abs(eval_cf(fp, z[j]));
      if (fpv == 0) {
        ok = false;
        break;
      }
      // Some root lies within d*|f(z)|/|f'(z)| of z.
      BF rad = BF(d) * fv / fpv;
      Rat rr = bf_to_rat(rad) + Rat(1, BigInt(1) << 80);
      Rat cre = bf_to_rat(z[j].re), cim = bf_to_rat(z[j].im);
      if (cim - rr <= 0) {
        ok = false;  // cannot separate from the real axis
        break;
      }
      boxes.push_back({Interval(cre - rr, cre + rr), Interval(cim - rr, cim + rr)});
    }
    if (ok && static_cast<int>(boxes.size()) == s) {
      // Pairwise disjointness of the upper-half boxes.
      for (size_t i = 0; i < boxes.size() && ok; ++i)
        for (size_t j = i + 1; j < boxes.size() && ok; ++j) {
          bool sep = boxes[i].re.hi < boxes[j].re.lo ||
                     boxes[j].re.hi < boxes[i].re.lo ||
                     boxes[i].im.hi < boxes[j].im.lo ||
                     boxes[j].im.hi < boxes[i].im.lo;
          if (!sep) ok = false;
        }
      if (ok) {
        // r disjoint real intervals + s disjoint upper boxes + s mirrored
        // boxes, each region holding at least one of the d roots: exactly
        // one root per region.
        out.complex_roots = std::move(boxes);
        return out;
      }
    }
  }
  throw std::runtime_error("isolate_all_roots: certification failed");
}

// ---- irreducibility --------------------------------------------------------

namespace {

bool divides_exactly(const ZPoly& g, const ZPoly& f) {
  // Exact division test of integer polynomials, g monic.
  std::vector<BigInt> r(f.begin(), f.end());
  while (r.size() >= g.size()) {
    BigInt c = r.back();
    size_t shift = r.size() - g.size();
    for (size_t i = 0; i < g.size(); ++i) r[shift + i] -= c * g[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (r.size() < g.size()) break;
  }
  return r.empty();
}

BigInt eval_z(const ZPoly& f, long x) {
  BigInt r = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
  return r;
}

}  // namespace

bool is_irreducible_monic(const ZPoly& f) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (f.back() != 1) throw std::invalid_argument("is_irreducible_monic: not monic");
  if (d == 1) return true;
  if (f[0] == 0) return false;  // root at 0
  // Integer roots (monic, so all rational roots are integers).
  for (const BigInt& p : divisors_of(f[0]))
    for (int s : {1, -1}) {
      BigInt r = 0;
      BigInt x = s * p;
      for (auto it = f.rbegin(); it != f.rend(); ++it) r = r * x + *it;
      if (r == 0) return false;
    }
  // Monic factors of degree 2..d/2 within the Mignotte coefficient bound.
  Rat norm2 = 0;
  for (const auto& c : f) norm2 += Rat(c * c);
  BigInt nb = isqrt(num(norm2) / den(norm2)) + 1;
  BigInt f1 = eval_z(f, 1), fm1 = eval_z(f, -1);
  for (int k = 2; k <= d / 2; ++k) {
    std::vector<BigInt> bound(k);
    BigInt total = 1;
    for (int i = 0; i < k; ++i) {
      bound[i] = binomial(k, i) * nb;
      total *= 2 * bound[i] + 1;
      if (total > 20000000)
        throw std::runtime_error("irreducibility search too large");
    }
    std::vector<BigInt> g(k + 1);
    g[k] = 1;
    std::vector<BigInt> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = -bound[i];
    while (true) {
      for (int i = 0; i < k; ++i) g[i] = idx[i];
      if (g[0] != 0 && f[0] % g[0] == 0) {
        BigInt g1 = 0, gm1 = 0;
        for (int i = k; i >= 0; --i) {
          g1 = g1 + g[i];
          gm1 = gm1 + ((k - i) % 2 == 0 ? g[i] : -g[i]);
        }
        bool plausible = (g1 == 0 ? f1 == 0 : f1 % g1 == 0) &&
                         (gm1 == 0 ? fm1 == 0 : fm1 % gm1 == 0);
        if (plausible && divides_exactly(g, f)) return false;
      }
      int i = 0;
      while (i < k && idx[i] == bound[i]) {
        idx[i] = -bound[i];
        ++i;
      }
      if (i == k) break;
      ++idx[i];
    }
  }
  return true;
}

namespace {

Rat resultant(QPoly f, QPoly g) {
  normalize(f);
  normalize(g);
  if (f.empty() || g.empty()) return 0;
  Rat res = 1;
  while (true) {
    int df = degree(f), dg = degree(g);
    if (dg == 0) {
      res *= pow_rat(g[0], df);
      return res;
    }
    QPoly q, r;
    divmod(f, g, q, r);
    normalize(r);
    if (r.empty()) return 0;
    int dr = degree(r);
    if ((df % 2) == 1 && (dg % 2) == 1) res = -res;
    res *= pow_rat(g.back(), df - dr);
    f = std::move(g);
    g = std::move(r);
  }
}

}  // namespace

BigInt poly_disc(const ZPoly& zf) {
  QPoly f = to_qpoly(zf);
  int d = degree(f);
  if (d < 1) throw std::invalid_argument("poly_disc: degree < 1");
  Rat res = resultant(f, derivative(f));
  Rat disc = res / f.back();
  if ((BigInt(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  if (den(disc) != 1) throw std::logic_error("poly_disc: non-integer result");
  return num(disc);
}

}  // namespace hcount
