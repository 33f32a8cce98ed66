#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hcount/census.hpp"
#include "hcount/regions.hpp"

using namespace hcount;

namespace {

NumberField quad_field(long c0) {
  NumberFieldSpec spec;
  spec.defining = {BigInt(c0), BigInt(0), BigInt(1)};
  return build_field(spec);
}

NumberField rational_field() {
  NumberFieldSpec spec;
  spec.defining = {BigInt(0), BigInt(1)};
  return build_field(spec);
}

FieldElem el(long a, long b) { return {Rat(a), Rat(b)}; }

// 2 * #{monic irreducible x^2 - t x + u with Mahler measure <= X^2}; each
// polynomial contributes its two conjugate roots.  Independent of the field
// sweep: works directly on minimal polynomials.
long long mahler_degree2_count(const Rat& X) {
  Rat X2 = X * X;
  BigInt tmax = floor_rat(2 * X2), umax = floor_rat(X2 * X2);
  long long polys = 0;
  for (BigInt t = -tmax; t <= tmax; ++t)
    for (BigInt u = -umax; u <= umax; ++u) {
      BigInt d0 = t * t - 4 * u;
      if (d0 == 0 || is_square(d0)) continue;
      Quad m(Rat(1));
      if (d0 > 0) {
        BigInt mm;
        BigInt m0 = squarefree_kernel(d0, &mm);
        Quad z1(Rat(t, 2), Rat(mm, 2), m0), z2(Rat(t, 2), Rat(-mm, 2), m0);
        m = quad_max(Quad(1), quad_abs(z1)) * quad_max(Quad(1), quad_abs(z2));
      } else {
        m = quad_max(Quad(1), Quad(Rat(u)));  // |z|^2 = u for the complex pair
      }
      if (m <= Quad(X2)) ++polys;
    }
  return 2 * polys;
}

// H(1/theta, beta_2, ..., beta_n)^d computed from the adele product: the
// finite places contribute |Nm theta| (denominator ideal (theta)), the
// archimedean ones max(1, |sigma(1/theta)|, |sigma beta_j|)^{d_i}.
Quad inverted_height_pow_d(const NumberField& K, const FieldElem& th,
                           const std::vector<FieldElem>& betas) {
  if (K.s == 0) {
    Quad nm = K.embed_real_exact(th, 0) * K.embed_real_exact(th, 1);
    Quad res = quad_abs(nm);
    for (int i = 0; i < 2; ++i) {
      Quad sup = inverse(quad_abs(K.embed_real_exact(th, i)));
      for (const auto& b : betas)
        sup = quad_max(sup, quad_abs(K.embed_real_exact(b, i)));
      res *= quad_max(Quad(1), sup);
    }
    return res;
  }
  auto [re, im] = K.embed_complex_exact(th);
  Quad msq = re * re + im * im;  // = |Nm theta| for imaginary quadratic
  Quad sup = inverse(msq);
  for (const auto& b : betas) {
    auto [br, bi] = K.embed_complex_exact(b);
    sup = quad_max(sup, br * br + bi * bi);
  }
  return msq * quad_max(Quad(1), sup);
}

long long bucket(const CensusResult& res, const std::vector<int>& I) {
  for (const auto& [key, cnt] : res.per_I)
    if (key == I) return cnt;
  return 0;
}

long long class_count(const CensusResult& res, int deg, int ratio) {
  for (const auto& [key, cnt] : res.per_class)
    if (key == std::make_pair(deg, ratio)) return cnt;
  return 0;
}

}  // namespace

TEST_CASE("exact Weil heights") {
  NumberField K = quad_field(-2);  // Q(sqrt 2)
  CHECK(height_pow_d(K, {el(1, 1)}) == Quad(Rat(1), Rat(1), 2));  // 1+sqrt2
  CHECK(height_pow_d(K, {el(0, 1)}) == Quad(2));
  CHECK(height_pow_d(K, {K.zero()}) == Quad(1));
  CHECK(height_pow_d(K, {K.one()}) == Quad(1));
  CHECK(height_pow_d(K, {el(5, 0)}) == Quad(25));
  CHECK(height_pow_d(K, {el(0, 1), el(1, 1)}) ==
        Quad(Rat(1), Rat(1), 2) * Quad(Rat(0), Rat(1), 2));

  NumberField G = quad_field(1);  // Q(i)
  CHECK(height_pow_d(G, {el(1, 1)}) == Quad(2));  // |1+i|^2
  CHECK(height_pow_d(G, {el(0, 2)}) == Quad(4));
  CHECK(height_pow_d(G, {el(1, 0), el(0, 1)}) == Quad(1));

  CHECK(height_leq(K, {el(0, 1)}, Rat(3, 2)));     // sqrt H^2 = sqrt2 <= 1.5
  CHECK(!height_leq(K, {el(0, 1)}, Rat(7, 5)));    // 2 > 1.96
  CHECK(!height_leq(K, {K.zero()}, Rat(1, 2)));    // H >= 1 always

  Interval h = weil_height(K, {el(0, 1)}, 40);
  CHECK(h.lo * h.lo <= Rat(2));
  CHECK(h.hi * h.hi >= Rat(2));
  CHECK(to_double(h.hi - h.lo) < 1e-20);
}

TEST_CASE("signature of the dominant embeddings") {
  NumberField K = quad_field(-2);
  CHECK(I_signature(K, {K.zero()}).empty());
  CHECK(I_signature(K, {K.one()}) == std::vector<int>{0, 1});
  CHECK(I_signature(K, {el(1, 1)}) == std::vector<int>{0});   // 1+sqrt2 Pisot
  CHECK(I_signature(K, {el(0, 1)}) == std::vector<int>{0, 1});
  CHECK(I_signature(K, {el(-1, 1)}) == std::vector<int>{1});  // sqrt2 - 1
  CHECK(I_signature(K, {el(1, 1), el(-1, 1)}) == std::vector<int>{0, 1});
}

TEST_CASE("height-ball enumeration") {
  NumberField K = quad_field(-2);
  Submodule O = maximal_order(K);

  auto pts = enumerate_heightball(K, O, 1, Rat(3, 2));
  REQUIRE(pts.size() == 5);  // 0, +-1, +-sqrt2
  for (const auto& p : pts) {
    CHECK(height_leq(K, p.elems, Rat(3, 2)));
    CHECK(p.height_pow_d == height_pow_d(K, p.elems));
  }
  CHECK(std::is_sorted(pts.begin(), pts.end(),
                       [](const AlgebraicPoint& a, const AlgebraicPoint& b) {
                         return a.coords < b.coords;
                       }));

  // rational integers: the ball is the full cube (2 floor(X) + 1)^n
  NumberField Q = rational_field();
  Submodule ZQ = maximal_order(Q);
  CHECK(enumerate_heightball(Q, ZQ, 2, Rat(5, 2)).size() == 25);
  CHECK(enumerate_heightball(Q, ZQ, 1, Rat(1)).size() == 3);
  CHECK(enumerate_heightball(Q, ZQ, 1, Rat(1, 2)).empty());

  // Gaussian integers with |z|^2 <= 9/4
  NumberField G = quad_field(1);
  CHECK(enumerate_heightball(G, maximal_order(G), 1, Rat(3, 2)).size() == 9);

  // proper submodule Z + 2 sqrt2 Z
  Submodule O2 = submodule(K, {{BigInt(1), BigInt(0)}, {BigInt(0), BigInt(2)}});
  CHECK(enumerate_heightball(K, O2, 1, Rat(3, 2)).size() == 3);
  CHECK(enumerate_heightball(K, O2, 1, Rat(2)).size() == 5);  // 0,+-1,+-2
}

TEST_CASE("point classification over the base field") {
  NumberField K = quad_field(-2), Q = rational_field();
  ExtensionContext ctx = extension_context(K, Q);
  REQUIRE(ctx.e == 2);

  auto tag = classify(ctx, {K.one(), el(0, 1)});  // (1, sqrt2)
  CHECK(tag.degree_over_k == 2);
  CHECK(tag.ratio_field_degree == 2);
  CHECK(tag.projectively_primitive);
  CHECK(!tag.is_npp);

  tag = classify(ctx, {el(0, 1), el(0, 2)});  // (sqrt2, 2 sqrt2), ratio 2
  CHECK(tag.degree_over_k == 2);
  CHECK(tag.ratio_field_degree == 1);
  CHECK(!tag.projectively_primitive);
  CHECK(tag.is_npp);

  tag = classify(ctx, {K.one(), K.one()});
  CHECK(tag.degree_over_k == 1);
  CHECK(tag.ratio_field_degree == 1);
  CHECK(!tag.projectively_primitive);
  CHECK(!tag.is_npp);

  tag = classify(ctx, {K.zero(), el(0, 1)});  // zero ratio kills primitivity
  CHECK(tag.degree_over_k == 2);
  CHECK(tag.ratio_field_degree == 1);
  CHECK(tag.is_npp);

  tag = classify(ctx, {K.zero(), K.zero()});
  CHECK(tag.degree_over_k == 1);
  CHECK(!tag.is_npp);  // the zero point is npp only when K = k
  CHECK(tag.I.empty());

  // over k = K every nonzero point is primitive, zero is the lone npp point
  ExtensionContext self = extension_context(K, K);
  REQUIRE(self.e == 1);
  REQUIRE(self.m == 2);
  CHECK(classify(self, {el(0, 1)}).projectively_primitive);
  CHECK(classify(self, {el(3, 0), el(0, 1)}).degree_over_k == 1);
  CHECK(classify(self, {K.zero()}).is_npp);
}

TEST_CASE("census sweep and its partitions") {
  NumberField K = quad_field(-2), Q = rational_field();
  ExtensionContext ctx = extension_context(K, Q);
  Submodule O = maximal_order(K);

  CensusResult res = run_census(ctx, O, 1, Rat(2));
  CHECK(res.partition_ok);
  CHECK(res.zero_count == 1);
  CHECK(res.total ==
        static_cast<long long>(enumerate_heightball(K, O, 1, Rat(2)).size()));
  CHECK(res.primitive_count == 0);  // n = 1 over a proper extension
  CHECK(class_count(res, 1, 1) == 5);
  CHECK(class_count(res, 2, 1) == res.npp_count);
  CHECK(class_count(res, 1, 1) + class_count(res, 2, 1) == res.total);

  // signature buckets match the exact region counts on sigma(O_K)
  EuclideanLattice L = minkowski_embed(K, O, 1);
  for (std::vector<int> I : {std::vector<int>{0}, std::vector<int>{1},
                             std::vector<int>{0, 1}}) {
    RegionSpec spec;
    spec.r = 2;
    spec.s = 0;
    spec.n = 1;
    spec.I = I;
    spec.T = Rat(4);  // X^d
    CHECK(bucket(res, I) == count_SI_direct(L, spec));
  }

  CensusResult res2 = run_census(ctx, O, 2, Rat(3, 2));
  CHECK(res2.partition_ok);
  CHECK(res2.total == 25);
  CHECK(res2.zero_count == 1);
  CHECK(res2.primitive_count == 8);  // (+-1, +-sqrt2) and swaps
  CHECK(res2.npp_count == 8);
  CHECK(class_count(res2, 1, 1) == 9);
  CHECK(class_count(res2, 2, 2) == 8);
  CHECK(class_count(res2, 2, 1) == 8);
}

TEST_CASE("dominant-real-embedding counts") {
  NumberField K = quad_field(-2);
  CHECK(count_pisot(K, Rat(2)) == 4);  // +-(1+sqrt2), +-(2+sqrt2)
  CHECK(count_pisot(K, Rat(1)) == 0);

  NumberField Q = rational_field();
  CHECK(count_pisot(Q, Rat(5)) == 10);

  NumberField G = quad_field(1);
  CHECK_THROWS_AS(count_pisot(G, Rat(2)), std::invalid_argument);
}

TEST_CASE("counting fixed relative degree") {
  NumberField Q = rational_field();
  for (long n = 1; n <= 3; ++n)
    for (Rat X : {Rat(1), Rat(5, 2), Rat(4)}) {
      OkneCount c = count_O_k_n_e(Q, static_cast<int>(n), 1, X);
      long long side = 2 * static_cast<long long>(floor_rat(X)) + 1;
      long long expect = 1;
      for (long i = 0; i < n; ++i) expect *= side;
      CHECK(c.total == expect);
    }

  NumberField K = quad_field(-2);
  CHECK(count_O_k_n_e(K, 1, 1, Rat(3, 2)).total == 5);

  for (Rat X : {Rat(3, 2), Rat(2)}) {
    OkneCount c = count_O_k_n_e(Q, 1, 2, X);
    CHECK(c.total == mahler_degree2_count(X));
    CHECK(c.t_bound == 2 * X * X);
    long long sum = 0;
    for (const auto& f : c.per_field) {
      CHECK(std::find(c.candidate_discs.begin(), c.candidate_discs.end(),
                      f.disc) != c.candidate_discs.end());
      sum += f.count;
    }
    CHECK(sum == c.total);
  }

  CHECK_THROWS_AS(count_O_k_n_e(quad_field(-2), 1, 2, Rat(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(count_O_k_n_e(Q, 1, 3, Rat(2)), std::invalid_argument);
}

TEST_CASE("smallest generating pairs") {
  NumberField K = quad_field(-2), Q = rational_field();
  ExtensionContext ctx = extension_context(K, Q);

  DeltaBound d1 = delta_g_upper(ctx, 1, Rat(3, 2));
  CHECK(d1.delta_pow_d == Quad(2));  // attained by (0, sqrt2)
  CHECK(d1.exact);
  CHECK(d1.delta.lo * d1.delta.lo <= Rat(2));
  CHECK(d1.delta.hi * d1.delta.hi >= Rat(2));
  // enlarging the search ball cannot change an exact minimum
  CHECK(delta_g_upper(ctx, 1, Rat(3)).delta_pow_d == Quad(2));

  CHECK_THROWS_AS(delta_g_upper(ctx, 2, Rat(2)), std::invalid_argument);
  CHECK_THROWS_AS(delta_g_upper(ctx, 1, Rat(11, 10)), std::runtime_error);

  ExtensionContext self = extension_context(K, K);
  CHECK(delta_g_upper(self, 1, Rat(2)).delta_pow_d == Quad(1));
}

TEST_CASE("small quadratic fields") {
  auto fields = quadratic_census(8);
  REQUIRE(fields.size() == 6);
  std::vector<BigInt> discs;
  for (const auto& K : fields) discs.push_back(K.disc);
  CHECK(discs == std::vector<BigInt>{-3, -4, 5, -7, -8, 8});

  CHECK(quadratic_census(3).size() == 1);
  CHECK(quadratic_census(0).empty());
}

TEST_CASE("non-primitive generators") {
  NumberField K = quad_field(-2), Q = rational_field();
  ExtensionContext ctx = extension_context(K, Q);
  Submodule O = maximal_order(K);

  CHECK(npp_census(ctx, O, 1, Rat(3, 2)) == 2);  // +-sqrt2
  CHECK(npp_census(ctx, O, 2, Rat(3, 2)) == 8);

  ExtensionContext self = extension_context(Q, Q);
  CHECK(npp_census(self, maximal_order(Q), 2, Rat(5)) == 1);  // just zero
}

TEST_CASE("inverting the common factor preserves the height") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> coef(-3, 3);

  NumberField K = quad_field(-2);
  for (int it = 0; it < 100; ++it) {
    FieldElem th = el(coef(rng), coef(rng));
    if (K.is_zero(th)) continue;
    std::vector<FieldElem> betas = {el(coef(rng), coef(rng)),
                                    el(coef(rng), coef(rng))};
    std::vector<FieldElem> scaled = {th, K.mul(th, betas[0]),
                                     K.mul(th, betas[1])};
    Quad lhs = height_pow_d(K, scaled);
    CHECK(lhs == inverted_height_pow_d(K, th, betas));
    CHECK(lhs >= height_pow_d(K, {th}));
    CHECK(lhs >= height_pow_d(K, betas));
  }

  NumberField G = quad_field(1);
  for (int it = 0; it < 100; ++it) {
    FieldElem th = el(coef(rng), coef(rng));
    if (G.is_zero(th)) continue;
    std::vector<FieldElem> betas = {el(coef(rng), coef(rng))};
    std::vector<FieldElem> scaled = {th, G.mul(th, betas[0])};
    Quad lhs = height_pow_d(G, scaled);
    CHECK(lhs == inverted_height_pow_d(G, th, betas));
    CHECK(lhs >= height_pow_d(G, {th}));
    CHECK(lhs >= height_pow_d(G, betas));
  }
}
