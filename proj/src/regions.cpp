#include "hcount/regions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace hcount {

int RegionSpec::d_prime() const {
  int dp = 0;
  for (int i : I) dp += block_deg(i);
  return dp;
}

bool RegionSpec::in_I(int i) const {
  return std::binary_search(I.begin(), I.end(), i);
}

void RegionSpec::validate() const {
  if (r < 0 || s < 0 || r + s < 1 || n < 1)
    throw std::invalid_argument("RegionSpec: bad signature");
  if (T < 1) throw std::domain_error("RegionSpec: T < 1");
  for (size_t k = 0; k < I.size(); ++k) {
    if (I[k] < 0 || I[k] >= r + s)
      throw std::invalid_argument("RegionSpec: I out of range");
    if (k > 0 && I[k] <= I[k - 1])
      throw std::invalid_argument("RegionSpec: I not sorted");
  }
}

Quad block_sup_pow(const QVec& v, const CoordLayout& layout, int i) {
  Quad best(0);
  for (int j = 0; j < layout.n; ++j) {
    int off = layout.offset(i, j);
    Quad val = layout.block_dim(i) == 1
                   ? quad_abs(v[off])
                   : v[off] * v[off] + v[off + 1] * v[off + 1];
    best = quad_max(best, val);
  }
  return best;
}

bool member_Z(const QVec& v, const CoordLayout& layout, const Rat& T) {
  if (T < 1) throw std::domain_error("member_Z: T < 1");
  Quad prod(1);
  for (int i = 0; i < layout.blocks(); ++i)
    prod *= quad_max(Quad(1), block_sup_pow(v, layout, i));
  return prod <= Quad(T);
}

bool member_SI(const QVec& v, const RegionSpec& spec) {
  CoordLayout layout = spec.layout();
  Quad prod(1);
  for (int i = 0; i < layout.blocks(); ++i) {
    Quad b = block_sup_pow(v, layout, i);
    if (spec.in_I(i)) {
      if (b < Quad(1)) return false;
      prod *= b;
    } else if (b >= Quad(1)) {
      return false;
    }
  }
  return prod <= Quad(spec.T);
}

double vol_SI(int r, int s, int n, int I_size, double T) {
  if (T < 1) throw std::domain_error("vol_SI: T < 1");
  double c = std::pow(2.0, r * n) * std::pow(M_PI, s * n);
  if (I_size == 0) return c;
  int qp = I_size - 1;
  double x = -n * std::log(T);
  double sum = 0, term = 1;  // term = x^i / i!
  for (int i = 0; i <= qp; ++i) {
    sum += term;
    term *= x / (i + 1);
  }
  double sign = qp % 2 == 0 ? 1.0 : -1.0;
  return c * sign * (-1.0 + std::pow(T, n) * sum);
}

double vol_SI(const RegionSpec& spec) {
  spec.validate();
  return vol_SI(spec.r, spec.s, spec.n, static_cast<int>(spec.I.size()),
                to_double(spec.T));
}

double vol_Z(int r, int s, int n, double T) {
  if (T < 1) throw std::domain_error("vol_Z: T < 1");
  int q = r + s - 1;
  double c = std::pow(2.0, r * n) * std::pow(M_PI, s * n);
  double lt = n * std::log(T), tn = std::pow(T, n);
  double total = 0, binom = 1, fact = 1, pw = 1;
  for (int i = 0; i <= q; ++i) {
    total += c * binom / fact * tn * pw;
    binom = binom * (q - i) / (i + 1);
    fact *= i + 1;
    pw *= lt;
  }
  return total;
}

bool PartitionData::in_mF(const std::vector<long>& j) const {
  return std::binary_search(m_F.begin(), m_F.end(), j);
}

namespace {

enum class Feas { kYes, kNo, kUndecided };

// Relaxed feasibility of F cap C_j via outward enclosures: a cell is
// rejected when some defining half-space x_i >= -delta_i log T (or its
// consequence x_i <= (1 - delta_i) log T) excludes the whole closed box,
// and accepted when the box midpoint certainly satisfies every half-space.
Feas cell_feasible_iv(const std::vector<long>& j, const PartitionData& P,
                      int digits) {
  int qp = P.spec.q_prime(), dim = qp + 1;
  Interval L = P.exact_logT ? Interval(*P.exact_logT)
                            : iv_log(P.spec.T, digits);
  std::vector<Interval> isc(qp);
  for (int p = 0; p < qp; ++p)
    isc[p] = Interval(Rat(1)) / iv_sqrt(P.sigma_basis[p].c, digits);
  bool mid_ok = true;
  for (int i = 0; i < dim; ++i) {
    Interval lo_bnd = Rat(-1) * P.delta[i] * L;
    Interval hi_bnd = (Rat(1) - P.delta[i]) * L;
    Interval sup(Rat(0)), inf(Rat(0)), mid(Rat(0));
    for (int p = 0; p < qp; ++p) {
      const Rat& vpi = P.sigma_basis[p].v[i];
      Rat hi_t = vpi >= 0 ? Rat(j[p] + 1) : Rat(j[p]);
      Rat lo_t = vpi >= 0 ? Rat(j[p]) : Rat(j[p] + 1);
      sup = sup + (hi_t * vpi) * isc[p];
      inf = inf + (lo_t * vpi) * isc[p];
      mid = mid + ((Rat(j[p]) + Rat(1, 2)) * vpi) * isc[p];
    }
    if (certainly_less(sup, lo_bnd)) return Feas::kNo;
    if (certainly_less(hi_bnd, inf)) return Feas::kNo;
    if (!certainly_leq(lo_bnd, mid)) mid_ok = false;
  }
  return mid_ok ? Feas::kYes : Feas::kUndecided;
}

// q' = 1 with rational log T: the feasible set in the e_1 coordinate is an
// exact interval with endpoints in Q(sqrt c), so membership is decidable.
bool cell_feasible_exact_q1(long j0, const PartitionData& P) {
  const Rat& L = *P.exact_logT;
  const SigmaVec& sb = P.sigma_basis[0];
  Quad sqrtc(Rat(0), Rat(1, den(sb.c)), num(sb.c) * den(sb.c));
  bool has_lo = false, has_hi = false;
  Quad tlo(0), thi(0);
  for (int i = 0; i < 2; ++i) {
    const Rat& vi = sb.v[i];
    Rat b = -P.delta[i] * L;
    if (vi == 0) {
      if (b > 0) return false;
      continue;
    }
    Quad bound = Quad(b / vi) * sqrtc;
    if (vi > 0) {
      tlo = has_lo ? quad_max(tlo, bound) : bound;
      has_lo = true;
    } else {
      thi = has_hi ? (bound < thi ? bound : thi) : bound;
      has_hi = true;
    }
  }
  if (has_lo && has_hi && thi < tlo) return false;
  if (has_lo && !(tlo < Quad(Rat(j0 + 1)))) return false;
  if (has_hi && !(thi >= Quad(Rat(j0)))) return false;
  return true;
}

}  // namespace

PartitionData build_partition(const RegionSpec& spec,
                              std::optional<Rat> exact_logT) {
  spec.validate();
  int qp = spec.q_prime();
  if (qp < 0) throw std::invalid_argument("build_partition: empty I");
  int dim = qp + 1;

  PartitionData P;
  P.spec = spec;
  int dp = spec.d_prime();
  for (int i : spec.I) P.delta.push_back(Rat(spec.block_deg(i), dp));

  // Gram-Schmidt on e_a - e_{q'+1}, kept rational as (v, |v|^2).
  for (int a = 0; a < qp; ++a) {
    std::vector<Rat> v(dim, Rat(0));
    v[a] = 1;
    v[dim - 1] = -1;
    for (const SigmaVec& prev : P.sigma_basis) {
      Rat dot(0);
      for (int i = 0; i < dim; ++i) dot += v[i] * prev.v[i];
      Rat coef = dot / prev.c;
      for (int i = 0; i < dim; ++i) v[i] -= coef * prev.v[i];
    }
    Rat c(0);
    for (int i = 0; i < dim; ++i) c += v[i] * v[i];
    P.sigma_basis.push_back({std::move(v), std::move(c)});
  }

  if (exact_logT) {
    if (*exact_logT < 0)
      throw std::domain_error("build_partition: negative log T");
    P.exact_logT = exact_logT;
    P.logT = Interval(*exact_logT);
  } else {
    P.logT = spec.T == 1 ? Interval(Rat(0)) : iv_log(spec.T, 40);
  }

  // F lies in B_0(2 log T), so every populated cell touches |t_p| <= 2 log T.
  long Jmax = ceil_rat(2 * P.logT.hi).convert_to<long>();
  std::vector<long> j(qp, -Jmax);
  for (;;) {
    Feas f = Feas::kUndecided;
    if (P.exact_logT && qp == 1)
      f = cell_feasible_exact_q1(j[0], P) ? Feas::kYes : Feas::kNo;
    for (int digits = 40; f == Feas::kUndecided && digits <= 400; digits *= 3)
      f = cell_feasible_iv(j, P, digits);
    if (f != Feas::kNo) P.m_F.push_back(j);  // undecided cells are kept

    int p = qp - 1;
    while (p >= 0 && j[p] == Jmax) j[p--] = -Jmax;
    if (p < 0) break;
    ++j[p];
  }
  return P;
}

CellTransform cell_transform(const PartitionData& part,
                             const std::vector<long>& j) {
  if (!part.in_mF(j)) throw std::invalid_argument("cell_transform: j not in m_F");
  const RegionSpec& spec = part.spec;
  int qp = spec.q_prime(), dim = qp + 1;
  int d = spec.d(), dp = spec.d_prime();

  CellTransform ct;
  ct.j = j;
  bool sums_ok = true;
  for (int p = 0; p < qp; ++p) {
    Rat sum(0);
    for (int i = 0; i < dim; ++i) sum += part.sigma_basis[p].v[i];
    if (sum != 0) sums_ok = false;
  }
  for (int i = 0; i < dim; ++i) {
    Interval ui(Rat(0));
    for (int p = 0; p < qp; ++p)
      ui = ui + (Rat(j[p]) * part.sigma_basis[p].v[i]) *
                    (Interval(Rat(1)) / iv_sqrt(part.sigma_basis[p].c, 40));
    ct.u.push_back(ui);
    int di = spec.block_deg(spec.I[i]);
    ct.gamma.push_back(iv_exp(Rat(-1, di) * ui, 40));
  }

  // blocks inside I shrink by T^{(d-d')/(d'd)} while the complement grows by
  // T^{1/d}; both land at scale T^{1/d} and the determinant cancels.
  Interval tI = spec.T == 1 ? Interval(Rat(1))
                            : iv_pow(spec.T, -(d - dp), long(dp) * d, 40);
  Interval tC = spec.T == 1 ? Interval(Rat(1)) : iv_pow(spec.T, 1, d, 40);
  Rat det_exp(0);
  for (int b = 0; b < spec.r + spec.s; ++b) {
    if (spec.in_I(b)) {
      int pos = int(std::lower_bound(spec.I.begin(), spec.I.end(), b) -
                    spec.I.begin());
      ct.block_scale.push_back(ct.gamma[pos] * tI);
      det_exp -= Rat(spec.block_deg(b) * spec.n) * Rat(d - dp, long(dp) * d);
    } else {
      ct.block_scale.push_back(tC);
      det_exp += Rat(spec.block_deg(b) * spec.n, d);
    }
  }
  // The gamma log-determinant is -sum_i u_i, which vanishes once every basis
  // row sums to zero; the T exponent must cancel on its own.
  ct.invariants_ok = sums_ok && det_exp == 0;
  return ct;
}

namespace {

// ---- exact linear forms in logarithms ------------------------------------
//
// A value sum_k c_k log(b_k) with rational c_k and positive bases that are
// rational or quadratic.  Rational bases are split into prime powers, and
// quadratic bases are folded through products/quotients that land in Q, so
// an exactly-zero form reduces to the empty form and everything else is
// provably nonzero (a nontrivial rational linear form in logarithms of
// multiplicatively independent algebraic numbers cannot vanish).
struct LogForm {
  std::map<BigInt, Rat> prime_exp;
  std::vector<std::pair<Rat, Quad>> quad_terms;

  bool is_zero() const { return prime_exp.empty() && quad_terms.empty(); }
};

void add_prime_power(LogForm& f, const BigInt& p, const Rat& e) {
  auto it = f.prime_exp.find(p);
  if (it == f.prime_exp.end()) {
    if (e != 0) f.prime_exp.emplace(p, e);
  } else {
    it->second += e;
    if (it->second == 0) f.prime_exp.erase(it);
  }
}

void add_int_factors(LogForm& f, BigInt m, const Rat& coef) {
  for (BigInt p = 2; p * p <= m && p < 1000000; p == 2 ? p = 3 : p += 2) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) add_prime_power(f, p, coef * e);
  }
  if (m > 1) add_prime_power(f, m, coef);  // prime, or a large cofactor
}

void add_rational(LogForm& f, const Rat& coef, const Rat& rho) {
  if (rho <= 0) throw std::domain_error("LogForm: nonpositive base");
  if (coef == 0 || rho == 1) return;
  add_int_factors(f, num(rho), coef);
  add_int_factors(f, den(rho), -coef);
}

void add_quad(LogForm& f, const Rat& coef, const Quad& beta) {
  if (beta.sign() <= 0) throw std::domain_error("LogForm: nonpositive base");
  if (coef == 0) return;
  if (beta.is_rational()) {
    add_rational(f, coef, beta.a);
    return;
  }
  if (beta.a == 0) {  // beta = b sqrt(M): beta^2 is rational
    add_rational(f, coef / 2, beta.b * beta.b * Rat(beta.M));
    return;
  }
  for (auto& [c, base] : f.quad_terms) {
    if (base.M != beta.M) continue;
    if (base == beta) {
      c += coef;
      return;
    }
    Quad prod = base * beta;
    if (prod.is_rational()) {  // log beta = log prod - log base
      add_rational(f, coef, prod.a);
      c -= coef;
      return;
    }
    Quad quot = beta / base;
    if (quot.is_rational()) {  // log beta = log quot + log base
      add_rational(f, coef, quot.a);
      c += coef;
      return;
    }
  }
  f.quad_terms.emplace_back(coef, beta);
}

void prune(LogForm& f) {
  f.quad_terms.erase(
      std::remove_if(f.quad_terms.begin(), f.quad_terms.end(),
                     [](const auto& t) { return t.first == 0; }),
      f.quad_terms.end());
}

Interval logform_enclosure(const LogForm& f, int digits) {
  Interval total(Rat(0));
  for (const auto& [p, e] : f.prime_exp)
    total = total + Interval(e) * iv_log(Rat(p), digits);
  for (const auto& [c, base] : f.quad_terms) {
    Interval b = base.enclosure(digits);
    for (int dd = digits; b.lo <= 0; dd *= 2) b = base.enclosure(dd);
    total = total + Interval(c) * iv_log(b, digits);
  }
  return total;
}

std::optional<int> logform_sign(const LogForm& f) {
  if (f.is_zero()) return 0;
  for (int digits = 40; digits <= 160; digits *= 2) {
    auto sg = logform_enclosure(f, digits).sign();
    if (sg && *sg != 0) return sg;
  }
  return std::nullopt;
}

// floor(value / sqrt(c)); the quotient is transcendental or zero, so the
// enclosure separates it from every integer eventually.
long logform_floor_div_sqrt(const LogForm& f, const Rat& c) {
  if (f.is_zero()) return 0;
  for (int digits = 40; digits <= 640; digits *= 2) {
    Interval val = logform_enclosure(f, digits) / iv_sqrt(c, digits);
    BigInt flo = floor_rat(val.lo), fhi = floor_rat(val.hi);
    if (flo == fhi) return flo.convert_to<long>();
  }
  throw std::runtime_error("assign_cell: cell boundary not separable");
}

std::vector<std::pair<Rat, Rat>> si_bounding_box(const RegionSpec& spec) {
  CoordLayout lay = spec.layout();
  std::vector<std::pair<Rat, Rat>> b(lay.dim());
  Rat sqrtT_hi = iv_sqrt(spec.T, 40).hi;
  for (int i = 0; i < lay.blocks(); ++i) {
    Rat bound = spec.in_I(i) ? (lay.block_dim(i) == 1 ? spec.T : sqrtT_hi)
                             : Rat(1);
    for (int j = 0; j < lay.n; ++j) {
      int off = lay.offset(i, j);
      b[off] = {-bound, bound};
      if (lay.block_dim(i) == 2) b[off + 1] = {-bound, bound};
    }
  }
  return b;
}

void require_layout(const EuclideanLattice& L, const RegionSpec& spec) {
  if (L.layout.r != spec.r || L.layout.s != spec.s || L.layout.n != spec.n)
    throw std::invalid_argument("lattice layout does not match region");
}

// Double-precision rejection ahead of the exact membership test.  Points
// farther than the margin from every boundary are decided here; anything
// within the margin (including exact boundary hits) falls through to the
// exact path.  Magnitudes stay small enough that double round-off is orders
// of magnitude below the margin.
struct SIPrefilter {
  std::vector<std::vector<double>> basis;
  const RegionSpec& spec;
  CoordLayout lay;
  double T;
  static constexpr double eps = 1e-6;

  SIPrefilter(const EuclideanLattice& L, const RegionSpec& s)
      : spec(s), lay(s.layout()), T(to_double(s.T)) {
    for (const QVec& row : L.basis) {
      std::vector<double> r;
      for (const Quad& x : row) r.push_back(to_double(x.enclosure(40).mid()));
      basis.push_back(std::move(r));
    }
  }

  // false = certainly not a member of S_I(T)
  bool maybe_member(const std::vector<BigInt>& a) const {
    int D = lay.dim();
    std::vector<double> y(D, 0.0);
    for (int k = 0; k < D; ++k) {
      if (a[k] == 0) continue;
      double ak = a[k].convert_to<double>();
      for (int i = 0; i < D; ++i) y[i] += ak * basis[k][i];
    }
    double prod = 1.0;
    for (int b = 0; b < lay.blocks(); ++b) {
      double sup = 0;  // |z|^{d_b}: modulus for real blocks, squared for complex
      for (int j = 0; j < lay.n; ++j) {
        int off = lay.offset(b, j);
        double v = lay.block_dim(b) == 1
                       ? std::abs(y[off])
                       : y[off] * y[off] + y[off + 1] * y[off + 1];
        sup = std::max(sup, v);
      }
      if (spec.in_I(b)) {
        if (sup < 1 - eps) return false;
        prod *= sup;
      } else if (sup > 1 + eps) {
        return false;
      }
    }
    return prod <= T * (1 + eps);
  }
};

Quad block_norm_sq(const QVec& v, const CoordLayout& lay, int i) {
  Quad total(0);
  for (int j = 0; j < lay.n; ++j) {
    int off = lay.offset(i, j);
    total += v[off] * v[off];
    if (lay.block_dim(i) == 2) total += v[off + 1] * v[off + 1];
  }
  return total;
}

}  // namespace

long long count_SI_direct(const EuclideanLattice& L, const RegionSpec& spec,
                          std::uint64_t cap) {
  spec.validate();
  require_layout(L, spec);
  auto pts = enumerate_in_box(L, si_bounding_box(spec), cap);
  SIPrefilter pre(L, spec);
  long long count = 0;
  for (const auto& a : pts)
    if (pre.maybe_member(a) && member_SI(L.vector_from_coords(a), spec))
      ++count;
  return count;
}

std::vector<long> assign_cell(const QVec& v, const PartitionData& part) {
  const RegionSpec& spec = part.spec;
  CoordLayout lay = spec.layout();
  int qp = spec.q_prime(), dim = qp + 1;
  std::vector<Quad> beta;
  for (int a = 0; a < dim; ++a) {
    beta.push_back(block_sup_pow(v, lay, spec.I[a]));
    if (beta.back().sign() <= 0)
      throw std::invalid_argument("assign_cell: zero block");
  }
  std::vector<long> j(qp);
  for (int p = 0; p < qp; ++p) {
    const SigmaVec& sb = part.sigma_basis[p];
    Rat dotd(0);
    for (int a = 0; a < dim; ++a) dotd += sb.v[a] * part.delta[a];
    LogForm form;
    for (int a = 0; a < dim; ++a) add_quad(form, sb.v[a] - dotd, beta[a]);
    prune(form);
    j[p] = logform_floor_div_sqrt(form, sb.c);
  }
  return j;
}

PartitionedCount count_SI_partitioned(const EuclideanLattice& L,
                                      const RegionSpec& spec,
                                      const PartitionData& part,
                                      std::uint64_t cap) {
  spec.validate();
  require_layout(L, spec);
  if (part.spec.r != spec.r || part.spec.s != spec.s ||
      part.spec.n != spec.n || part.spec.I != spec.I || part.spec.T != spec.T)
    throw std::invalid_argument("partition built for a different region");

  auto pts = enumerate_in_box(L, si_bounding_box(spec), cap);
  CoordLayout lay = spec.layout();

  // |psi_j v|^2 <= kappa^2 T^{2/d} audit data, one scale set per cell.
  std::map<std::vector<long>, std::vector<Interval>> scale_sq;
  for (const auto& j : part.m_F) {
    CellTransform ct = cell_transform(part, j);
    std::vector<Interval> sq;
    for (const Interval& sc : ct.block_scale) sq.push_back(sc * sc);
    scale_sq.emplace(j, std::move(sq));
  }
  Interval kappa_bound = Rat(spec.d() * spec.n) *
                         iv_exp(Rat(2) * iv_sqrt(Rat(spec.q()), 40), 40);
  if (spec.T != 1) kappa_bound = kappa_bound * iv_pow(spec.T, 2, spec.d(), 40);

  struct Local {
    std::map<std::vector<long>, long long> cells;
    bool kappa_ok = true, disjoint_ok = true;
  };
  SIPrefilter pre(L, spec);
  auto work = [&](size_t lo, size_t hi) {
    Local loc;
    for (size_t k = lo; k < hi; ++k) {
      if (!pre.maybe_member(pts[k])) continue;
      QVec v = L.vector_from_coords(pts[k]);
      if (!member_SI(v, spec)) continue;
      std::vector<long> j = assign_cell(v, part);
      auto range = std::equal_range(part.m_F.begin(), part.m_F.end(), j);
      if (range.first == range.second)
        throw std::runtime_error("count_SI_partitioned: point outside m_F");
      if (range.second - range.first != 1) loc.disjoint_ok = false;
      ++loc.cells[j];
      Interval nsq(Rat(0));
      const auto& sq = scale_sq.at(j);
      for (int b = 0; b < lay.blocks(); ++b)
        nsq = nsq + sq[b] * block_norm_sq(v, lay, b).enclosure(40);
      if (certainly_less(kappa_bound, nsq)) loc.kappa_ok = false;
    }
    return loc;
  };

  size_t nt = std::max<size_t>(
      1, std::min<size_t>(8, std::thread::hardware_concurrency()));
  nt = std::min(nt, std::max<size_t>(1, pts.size()));
  size_t chunk = (pts.size() + nt - 1) / std::max<size_t>(nt, 1);
  std::vector<std::future<Local>> futs;
  for (size_t t = 0; t < nt; ++t) {
    size_t lo = t * chunk, hi = std::min(pts.size(), lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, work, lo, hi));
  }
  PartitionedCount out;
  std::map<std::vector<long>, long long> cells;
  for (auto& fu : futs) {
    Local loc = fu.get();
    for (const auto& [j, c] : loc.cells) cells[j] += c;
    out.kappa_ok = out.kappa_ok && loc.kappa_ok;
    out.disjoint_ok = out.disjoint_ok && loc.disjoint_ok;
  }
  for (auto& [j, c] : cells) {
    out.total += c;
    out.per_cell.emplace_back(j, c);
  }
  return out;
}

namespace {

// Sign of (log form) + offset.  A nonempty reduced form is a nonzero
// rational combination of logarithms of multiplicatively independent
// algebraic numbers, hence transcendental; it can equal the rational
// -offset only when both vanish.
std::optional<int> logform_sign_offset(const LogForm& f, const Rat& offset) {
  if (f.is_zero()) return sgn(offset);
  for (int digits = 40; digits <= 160; digits *= 2) {
    auto sg = (logform_enclosure(f, digits) + Interval(offset)).sign();
    if (sg && *sg != 0) return sg;
  }
  return std::nullopt;
}

}  // namespace

std::optional<bool> member_SF(const QVec& v, const RegionSpec& spec,
                              const Rat& F_log) {
  spec.validate();
  if (F_log < 0) throw std::domain_error("member_SF: negative F threshold");
  if (spec.I.empty()) throw std::invalid_argument("member_SF: empty I");
  CoordLayout lay = spec.layout();
  int dim = spec.q_prime() + 1;
  std::vector<Quad> beta;
  std::vector<Rat> delta;
  int dp = spec.d_prime();
  for (int a = 0; a < dim; ++a) {
    beta.push_back(block_sup_pow(v, lay, spec.I[a]));
    if (beta.back().sign() <= 0)
      throw std::invalid_argument("member_SF: zero block");
    delta.push_back(Rat(spec.block_deg(spec.I[a]), dp));
  }
  // t = sum_a log beta_a <= log T
  LogForm f0;
  for (int a = 0; a < dim; ++a) add_quad(f0, Rat(1), beta[a]);
  add_quad(f0, Rat(-1), Quad(spec.T));
  prune(f0);
  auto s0 = logform_sign(f0);
  if (!s0) return std::nullopt;
  if (*s0 > 0) return false;
  // x_a = w_a - delta_a t >= -delta_a F_log
  for (int a = 0; a < dim; ++a) {
    LogForm f;
    for (int b = 0; b < dim; ++b)
      add_quad(f, (b == a ? Rat(1) : Rat(0)) - delta[a], beta[b]);
    prune(f);
    auto sg = logform_sign_offset(f, delta[a] * F_log);
    if (!sg) return std::nullopt;
    if (*sg < 0) return false;
  }
  return true;
}

namespace {

McEstimate mc_finish(double volbox, std::uint64_t hits, std::uint64_t N) {
  double p = double(hits) / double(N);
  return {volbox * p, volbox * std::sqrt(p * (1 - p) / double(N)),
          N};
}

}  // namespace

McEstimate mc_volume_Z(int r, int s, int n, double T, std::uint64_t samples,
                       std::uint64_t seed) {
  if (T < 1) throw std::domain_error("mc_volume_Z: T < 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double sT = std::sqrt(T);
  double volbox = std::pow(2 * T, r * n) * std::pow(2 * sT, 2.0 * s * n);
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    double prod = 1;
    for (int i = 0; i < r + s; ++i) {
      double sup = 0;
      for (int j = 0; j < n; ++j) {
        if (i < r) {
          sup = std::max(sup, std::fabs(T * unif(rng)));
        } else {
          double re = sT * unif(rng), im = sT * unif(rng);
          sup = std::max(sup, std::sqrt(re * re + im * im));
        }
      }
      prod *= std::pow(std::max(1.0, sup), i < r ? 1 : 2);
    }
    if (prod <= T) ++hits;
  }
  return mc_finish(volbox, hits, samples);
}

McEstimate mc_volume_SI(const RegionSpec& spec, std::uint64_t samples,
                        std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double T = to_double(spec.T), sT = std::sqrt(T);
  double volbox = 1;
  for (int i = 0; i < spec.r + spec.s; ++i) {
    double bound = spec.in_I(i) ? (i < spec.r ? T : sT) : 1.0;
    volbox *= std::pow(2 * bound, spec.block_deg(i) * spec.n);
  }
  std::uint64_t hits = 0;
  for (std::uint64_t k = 0; k < samples; ++k) {
    double prod = 1;
    bool ok = true;
    for (int i = 0; i < spec.r + spec.s && ok; ++i) {
      double bound = spec.in_I(i) ? (i < spec.r ? T : sT) : 1.0;
      double sup = 0;
      for (int j = 0; j < spec.n; ++j) {
        if (i < spec.r) {
          sup = std::max(sup, std::fabs(bound * unif(rng)));
        } else {
          double re = bound * unif(rng), im = bound * unif(rng);
          sup = std::max(sup, std::sqrt(re * re + im * im));
        }
      }
      if (spec.in_I(i)) {
        if (sup < 1) ok = false;
        prod *= std::pow(sup, spec.block_deg(i));
      } else if (sup >= 1) {
        ok = false;
      }
    }
    if (ok && prod <= T) ++hits;
  }
  return mc_finish(volbox, hits, samples);
}

}  // namespace hcount
