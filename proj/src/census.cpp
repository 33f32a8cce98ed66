#include "hcount/census.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>
#include <map>
#include <set>
#include <stdexcept>

namespace hcount {

namespace {

// max_j |sigma_i(alpha_j)|^{d_i} as an exact Quad; complex blocks use the
// squared modulus.
Quad block_sup(const NumberField& K, const std::vector<FieldElem>& pt, int i) {
  Quad sup(Rat(0));
  for (const FieldElem& a : pt) {
    if (i < K.r) {
      sup = quad_max(sup, quad_abs(K.embed_real_exact(a, i)));
    } else {
      auto [re, im] = K.embed_complex_exact(a);
      sup = quad_max(sup, re * re + im * im);
    }
  }
  return sup;
}

void require_exact(const NumberField& K) {
  if (!K.quad_exact)
    throw std::invalid_argument("census: exact embeddings require deg K <= 2");
}

// [k(gens) : k] via the Q-dimension of the Q-algebra generated together with
// a generator of k; the generated algebra is a field, so the dimension is
// m * [k(gens) : k].
int k_degree(const ExtensionContext& ctx, std::vector<FieldElem> gens) {
  if (gens.empty()) return 1;
  if (ctx.m > 1) {
    if (!ctx.k_generator_in_K)
      throw std::logic_error("census: no generator of k inside K");
    gens.push_back(*ctx.k_generator_in_K);
  }
  int dq = subalgebra_degree(ctx.K, gens);
  if (dq % ctx.m != 0)
    throw std::logic_error("census: generated algebra is not a k-space");
  return dq / ctx.m;
}

std::vector<FieldElem> submodule_elems(const NumberField& K,
                                       const Submodule& O) {
  int d = K.d;
  std::vector<FieldElem> beta(d);
  for (int l = 0; l < d; ++l) {
    std::vector<Rat> c(d);
    for (int i = 0; i < d; ++i) c[i] = Rat(O.basis[i][l]);
    beta[l] = K.from_integral_coords(c);
  }
  return beta;
}

}  // namespace

Quad height_pow_d(const NumberField& K, const std::vector<FieldElem>& pt) {
  require_exact(K);
  Quad h(Rat(1));
  for (int i = 0; i < K.r + K.s; ++i)
    h *= quad_max(Quad(Rat(1)), block_sup(K, pt, i));
  return h;
}

Interval weil_height(const NumberField& K, const std::vector<FieldElem>& pt,
                     int digits) {
  Interval hd = height_pow_d(K, pt).enclosure(digits);
  return K.d == 1 ? hd : iv_sqrt(hd, digits);
}

bool height_leq(const NumberField& K, const std::vector<FieldElem>& pt,
                const Rat& X) {
  if (X < 1) return false;
  return height_pow_d(K, pt) <= Quad(pow_rat(X, K.d));
}

std::vector<int> I_signature(const NumberField& K,
                             const std::vector<FieldElem>& pt) {
  require_exact(K);
  std::vector<int> I;
  for (int i = 0; i < K.r + K.s; ++i)
    if (block_sup(K, pt, i) >= Quad(Rat(1))) I.push_back(i);
  return I;
}

std::vector<AlgebraicPoint> enumerate_heightball(const NumberField& K,
                                                 const Submodule& O, int n,
                                                 const Rat& X,
                                                 std::uint64_t cap) {
  require_exact(K);
  if (n < 1) throw std::invalid_argument("enumerate_heightball: n < 1");
  if (X < 1) return {};

  EuclideanLattice L = minkowski_embed(K, O, n);
  Rat Td = pow_rat(X, K.d);
  Rat sq = K.s > 0 ? iv_sqrt(Td, 40).hi : Rat(0);
  std::vector<std::pair<Rat, Rat>> bounds;
  for (int i = 0; i < K.r * n; ++i) bounds.emplace_back(-Td, Td);
  for (int i = 0; i < 2 * K.s * n; ++i) bounds.emplace_back(-sq, sq);

  std::vector<FieldElem> beta = submodule_elems(K, O);
  // embeddings of the submodule basis, so candidate heights come straight
  // from the integer coordinates (elements are only built for survivors)
  std::vector<std::vector<Quad>> emb_r(K.r, std::vector<Quad>(K.d));
  std::vector<std::pair<Quad, Quad>> emb_c(K.s > 0 ? K.d : 0);
  for (int l = 0; l < K.d; ++l) {
    for (int i = 0; i < K.r; ++i) emb_r[i][l] = K.embed_real_exact(beta[l], i);
    if (K.s > 0) emb_c[l] = K.embed_complex_exact(beta[l]);
  }

  Quad bound(Td);
  auto candidates = enumerate_in_box(L, bounds, cap);
  auto filter = [&](size_t lo, size_t hi) {
    std::vector<AlgebraicPoint> kept;
    for (size_t idx = lo; idx < hi; ++idx) {
      const auto& c = candidates[idx];
      Quad h(Rat(1));
      bool keep = true;
      for (int i = 0; i < K.r + K.s && keep; ++i) {
        Quad sup(Rat(0));
        for (int j = 0; j < n; ++j) {
          Quad v(Rat(0));
          if (i < K.r) {
            for (int l = 0; l < K.d; ++l)
              v += Quad(Rat(c[j * K.d + l])) * emb_r[i][l];
            v = quad_abs(v);
          } else {
            Quad re(Rat(0)), im(Rat(0));
            for (int l = 0; l < K.d; ++l) {
              Quad w{Rat(c[j * K.d + l])};
              re += w * emb_c[l].first;
              im += w * emb_c[l].second;
            }
            v = re * re + im * im;
          }
          sup = quad_max(sup, v);
        }
        h *= quad_max(Quad(Rat(1)), sup);
        if (h > bound) keep = false;  // the height only grows with the blocks
      }
      if (!keep) continue;

      AlgebraicPoint p;
      p.coords.resize(n);
      p.elems.resize(n);
      for (int j = 0; j < n; ++j) {
        p.coords[j].assign(c.begin() + j * K.d, c.begin() + (j + 1) * K.d);
        FieldElem e = K.zero();
        for (int l = 0; l < K.d; ++l)
          for (int i = 0; i < K.d; ++i)
            e[i] += Rat(p.coords[j][l]) * beta[l][i];
        p.elems[j] = std::move(e);
      }
      p.height_pow_d = h;
      kept.push_back(std::move(p));
    }
    return kept;
  };

  size_t workers = std::max<size_t>(
      1, std::min<size_t>(8, std::thread::hardware_concurrency()));
  if (workers <= 1 || candidates.size() < 4096) return filter(0, candidates.size());

  size_t chunk = (candidates.size() + workers - 1) / workers;
  std::vector<std::future<std::vector<AlgebraicPoint>>> futs;
  for (size_t t = 0; t < workers; ++t) {
    size_t lo = t * chunk, hi = std::min(candidates.size(), lo + chunk);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, filter, lo, hi));
  }
  std::vector<AlgebraicPoint> out;  // in-order concat keeps lex order
  for (auto& fu : futs) {
    auto part = fu.get();
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

ClassificationTag classify(const ExtensionContext& ctx,
                           const std::vector<FieldElem>& pt) {
  const NumberField& K = ctx.K;
  ClassificationTag tag;
  tag.I = I_signature(K, pt);

  std::vector<FieldElem> nonzero;
  int first = -1;
  for (int j = 0; j < static_cast<int>(pt.size()); ++j)
    if (!K.is_zero(pt[j])) {
      nonzero.push_back(pt[j]);
      if (first < 0) first = j;
    }

  if (nonzero.empty()) {
    tag.is_npp = ctx.e == 1;
    return tag;
  }
  tag.degree_over_k = k_degree(ctx, nonzero);
  if (pt.size() > 1) {
    FieldElem inv0 = K.inv(pt[first]);
    std::vector<FieldElem> ratios;
    for (int j = 0; j < static_cast<int>(pt.size()); ++j)
      if (j != first && !K.is_zero(pt[j]))
        ratios.push_back(K.mul(pt[j], inv0));
    tag.ratio_field_degree = k_degree(ctx, ratios);
  }
  tag.projectively_primitive = tag.ratio_field_degree == ctx.e;
  tag.is_npp = tag.degree_over_k == ctx.e && !tag.projectively_primitive;
  return tag;
}

CensusResult run_census(const ExtensionContext& ctx, const Submodule& O, int n,
                        const Rat& X, std::uint64_t cap, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  CensusResult res;
  res.X = X;
  auto pts = enumerate_heightball(ctx.K, O, n, X, cap);
  res.total = static_cast<long long>(pts.size());

  struct Agg {
    std::map<std::vector<int>, long long> per_I;
    std::map<std::pair<int, int>, long long> per_class;
    long long zero = 0, prim = 0, npp = 0;
  };
  auto work = [&](std::size_t lo, std::size_t hi) {
    Agg a;
    for (std::size_t i = lo; i < hi; ++i) {
      ClassificationTag tag = classify(ctx, pts[i].elems);
      if (tag.I.empty())
        ++a.zero;
      else
        ++a.per_I[tag.I];
      ++a.per_class[{tag.degree_over_k, tag.ratio_field_degree}];
      if (tag.projectively_primitive) ++a.prim;
      if (tag.is_npp) ++a.npp;
    }
    return a;
  };

  int nthreads = threads > 0 ? threads : 8;
  std::size_t chunk = std::max<std::size_t>(1, pts.size() / nthreads + 1);
  std::vector<std::future<Agg>> futs;
  for (std::size_t lo = 0; lo < pts.size(); lo += chunk)
    futs.push_back(std::async(std::launch::async, work, lo,
                              std::min(lo + chunk, pts.size())));

  std::map<std::vector<int>, long long> per_I;
  std::map<std::pair<int, int>, long long> per_class;
  for (auto& f : futs) {
    Agg a = f.get();
    res.zero_count += a.zero;
    res.primitive_count += a.prim;
    res.npp_count += a.npp;
    for (auto& [k, v] : a.per_I) per_I[k] += v;
    for (auto& [k, v] : a.per_class) per_class[k] += v;
  }
  res.per_I.assign(per_I.begin(), per_I.end());
  res.per_class.assign(per_class.begin(), per_class.end());

  long long s = res.zero_count;
  for (auto& [k, v] : res.per_I) s += v;
  res.partition_ok = s == res.total;
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

long long count_pisot(const NumberField& k, const Rat& X, std::uint64_t cap) {
  if (k.r < 1)
    throw std::invalid_argument("count_pisot: field has no real embedding");
  long long cnt = 0;
  for (auto& p : enumerate_heightball(k, maximal_order(k), 1, X, cap))
    if (I_signature(k, p.elems) == std::vector<int>{0}) ++cnt;
  return cnt;
}

OkneCount count_O_k_n_e(const NumberField& k, int n, int e, const Rat& X,
                        std::uint64_t cap) {
  OkneCount res;
  if (e == 1) {
    long long cnt = static_cast<long long>(
        enumerate_heightball(k, maximal_order(k), n, X, cap).size());
    res.total = cnt;
    res.candidate_discs = {k.disc};
    if (cnt > 0) res.per_field.push_back({k.disc, cnt});
    return res;
  }
  if (e != 2 || k.d != 1)
    throw std::invalid_argument("count_O_k_n_e: only e = 1, or e = 2 over Q");

  // every conjugate of a degree-2 coordinate is bounded by X^2, so its
  // minimal polynomial x^2 - t x + u satisfies |t| <= 2X^2, |u| <= X^4
  Rat X2 = X * X;
  res.t_bound = 2 * X2;
  res.u_bound = X2 * X2;
  if (X < 1) return res;

  BigInt tmax = floor_rat(res.t_bound), umax = floor_rat(res.u_bound);
  std::set<BigInt> discs;
  for (BigInt t = -tmax; t <= tmax; ++t)
    for (BigInt u = -umax; u <= umax; ++u) {
      BigInt d0 = t * t - 4 * u;
      if (d0 == 0 || is_square(d0)) continue;  // reducible: degree-1 roots
      BigInt D = squarefree_kernel(d0);
      discs.insert(((D % 4) + 4) % 4 == 1 ? D : 4 * D);
    }

  res.candidate_discs.assign(discs.begin(), discs.end());
  Rat four_x4 = 4 * res.u_bound;
  for (const BigInt& disc : res.candidate_discs) {
    // an irrational integer of the field has conjugate spread >= sqrt|disc|
    if (disc > 0 && Rat(disc) > four_x4) continue;
    if (disc < 0 && Rat(-disc) > 4 * X2) continue;
    BigInt D = ((disc % 4) + 4) % 4 == 1 ? disc : disc / 4;
    NumberFieldSpec spec;
    spec.defining = {-D, 0, 1};
    NumberField K = build_field(spec);
    long long cnt = 0;
    for (auto& p : enumerate_heightball(K, maximal_order(K), n, X, cap))
      for (auto& a : p.elems)
        if (a[1] != 0) {  // some coordinate is irrational
          ++cnt;
          break;
        }
    if (cnt > 0) {
      res.per_field.push_back({disc, cnt});
      res.total += cnt;
    }
  }
  return res;
}

DeltaBound delta_g_upper(const ExtensionContext& ctx, int g,
                         const Rat& search_bound, std::uint64_t cap) {
  const NumberField& K = ctx.K;
  const auto& degs = ctx.subfield_degrees;
  if (std::find(degs.begin(), degs.end(), g) == degs.end())
    throw std::invalid_argument("delta_g_upper: g is not an intermediate degree");
  if (ctx.e == 1) {
    // the zero pair generates k(0,0) = k = K at height 1
    return {Quad(Rat(1)), Interval(Rat(1)), true, {K.zero(), K.zero()}};
  }

  std::optional<AlgebraicPoint> best;
  for (auto& p : enumerate_heightball(K, maximal_order(K), 2, search_bound,
                                      cap)) {
    std::vector<FieldElem> nonzero;
    for (auto& a : p.elems)
      if (!K.is_zero(a)) nonzero.push_back(a);
    int da = K.is_zero(p.elems[0]) ? 1 : k_degree(ctx, {p.elems[0]});
    if (da != g || k_degree(ctx, nonzero) != ctx.e) continue;
    if (!best || p.height_pow_d < best->height_pow_d) best = p;
  }
  if (!best)
    throw std::runtime_error("delta_g_upper: no witness below search bound");
  Interval hd = best->height_pow_d.enclosure(40);
  return {best->height_pow_d, K.d == 1 ? hd : iv_sqrt(hd, 40), true,
          best->elems};
}

std::vector<NumberField> quadratic_census(const BigInt& disc_bound) {
  std::vector<std::pair<BigInt, BigInt>> keyed;  // (|disc|, disc)
  for (BigInt D = -disc_bound; D <= disc_bound; ++D) {
    if (D == 0 || D == 1 || squarefree_kernel(D) != D) continue;
    BigInt disc = ((D % 4) + 4) % 4 == 1 ? D : 4 * D;
    if (abs_int(disc) <= disc_bound) keyed.emplace_back(abs_int(disc), disc);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<NumberField> out;
  for (auto& [_, disc] : keyed) {
    BigInt D = ((disc % 4) + 4) % 4 == 1 ? disc : disc / 4;
    NumberFieldSpec spec;
    spec.defining = {-D, 0, 1};
    out.push_back(build_field(spec));
  }
  return out;
}

long long npp_census(const ExtensionContext& ctx, const Submodule& O, int n,
                     const Rat& X, std::uint64_t cap) {
  long long cnt = 0;
  for (auto& p : enumerate_heightball(ctx.K, O, n, X, cap))
    if (classify(ctx, p.elems).is_npp) ++cnt;
  return cnt;
}

}  // namespace hcount
