#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hcount/numfield.hpp"

using namespace hcount;

namespace {

NumberField quad_field(long c0, long c1 = 0) {
  NumberFieldSpec spec;
  spec.defining = {BigInt(c0), BigInt(c1), BigInt(1)};
  return build_field(spec);
}

bool iv_contains_approx(const Interval& iv, double x, double tol = 1e-9) {
  return to_double(iv.lo) <= x + tol && to_double(iv.hi) >= x - tol;
}

}  // namespace

TEST_CASE("polynomial basics") {
  ZPoly f{BigInt(-2), BigInt(0), BigInt(1)};  // x^2 - 2
  CHECK(is_irreducible_monic(f));
  CHECK(poly_disc(f) == 8);
  CHECK_FALSE(is_irreducible_monic({BigInt(-1), BigInt(0), BigInt(1)}));
  CHECK_FALSE(is_irreducible_monic({BigInt(1), BigInt(2), BigInt(1)}));
  // x^4 - 10x^2 + 1 is irreducible though it has no rational roots
  ZPoly q{BigInt(1), BigInt(0), BigInt(-10), BigInt(0), BigInt(1)};
  CHECK(is_irreducible_monic(q));
  CHECK(poly_disc(q) == 147456);
  // x^4 + 4 = (x^2-2x+2)(x^2+2x+2): only quadratic factors
  CHECK_FALSE(is_irreducible_monic({BigInt(4), BigInt(0), BigInt(0), BigInt(0), BigInt(1)}));
}

TEST_CASE("real root isolation") {
  QPoly f = to_qpoly({BigInt(-2), BigInt(0), BigInt(1)});
  auto roots = isolate_real_roots(f);
  REQUIRE(roots.size() == 2);
  roots[0].refine_below(Rat(1, 1000000));
  roots[1].refine_below(Rat(1, 1000000));
  CHECK(to_double(roots[0].iv().mid()) == doctest::Approx(-1.41421356).epsilon(1e-5));
  CHECK(to_double(roots[1].iv().mid()) == doctest::Approx(1.41421356).epsilon(1e-5));

  QPoly g = to_qpoly({BigInt(1), BigInt(0), BigInt(-10), BigInt(0), BigInt(1)});
  CHECK(isolate_real_roots(g).size() == 4);
  CHECK(count_real_roots(g) == 4);

  // rational roots are reported exactly
  QPoly h = to_qpoly({BigInt(-6), BigInt(11), BigInt(-6), BigInt(1)});
  auto hr = isolate_real_roots(h);
  REQUIRE(hr.size() == 3);
  for (const auto& r : hr) CHECK(r.exact);
}

TEST_CASE("complex root certification") {
  ZPoly f{BigInt(-2), BigInt(0), BigInt(0), BigInt(1)};  // x^3 - 2
  auto dec = isolate_all_roots(f);
  REQUIRE(dec.real_roots.size() == 1);
  REQUIRE(dec.complex_roots.size() == 1);
  // 2^(1/3) * exp(2 pi i / 3)
  CHECK(iv_contains_approx(dec.complex_roots[0].re, -0.6299605249, 1e-6));
  CHECK(iv_contains_approx(dec.complex_roots[0].im, 1.0911236359, 1e-6));
}

TEST_CASE("build_field on Q(sqrt 2)") {
  NumberField K = quad_field(-2);
  CHECK(K.d == 2);
  CHECK(K.r == 2);
  CHECK(K.s == 0);
  CHECK(K.unit_rank == 1);
  CHECK(K.disc == 8);
  // B_K = 4 / sqrt(8) = sqrt(2)
  Interval B = K.minkowski_constant();
  CHECK(iv_contains_approx(B, 1.4142135623730951, 1e-12));
  CHECK(to_double(B.width()) < 1e-20);
  // exact embeddings: sigma_1(1 + sqrt2) = 1 + sqrt2, sigma_2 = 1 - sqrt2
  FieldElem a{Rat(1), Rat(1)};
  CHECK(K.embed_real_exact(a, 0) > Quad(2));
  CHECK(K.embed_real_exact(a, 1).sign() < 0);
}

TEST_CASE("build_field on Q(i) and Q(sqrt 5)") {
  NumberField Ki = quad_field(1);
  CHECK(Ki.disc == -4);
  CHECK(Ki.r == 0);
  CHECK(Ki.s == 1);
  CHECK(Ki.unit_rank == 0);
  CHECK(iv_contains_approx(Ki.minkowski_constant(), 3.141592653589793, 1e-12));

  NumberField K5 = quad_field(-5);
  CHECK(K5.disc == 5);
  // integral basis contains (1 + sqrt5)/2
  FieldElem omega = K5.integral_basis[1];
  CHECK(omega[0] == Rat(1, 2));
  CHECK(omega[1] == Rat(1, 2));

  // x^2 - 12: disc 12 (kernel 3, 4*3), basis {1, sqrt3} in power coords
  NumberField K12 = quad_field(-12);
  CHECK(K12.disc == 12);
  CHECK(K12.integral_basis[1][1] == Rat(1, 2));  // sqrt3 = t/2
}

TEST_CASE("build_field rejects bad input") {
  NumberFieldSpec spec;
  spec.defining = {BigInt(-1), BigInt(0), BigInt(1)};  // x^2 - 1
  CHECK_THROWS(build_field(spec));
  spec.defining = {BigInt(-2), BigInt(0), BigInt(2)};  // not monic
  CHECK_THROWS(build_field(spec));
  spec.defining = {BigInt(-2), BigInt(0), BigInt(0), BigInt(1)};  // needs basis
  CHECK_THROWS(build_field(spec));
}

TEST_CASE("field spec parsing") {
  auto s1 = parse_field_spec("x^2 - 2\n");
  CHECK(s1.defining == ZPoly{BigInt(-2), BigInt(0), BigInt(1)});
  auto s2 = parse_field_spec("# comment\n[ -2, 0, 1 ]\n");
  CHECK(s2.defining == s1.defining);
  auto s3 = parse_field_spec("x^4 - 10x^2 + 1");
  CHECK(s3.defining == ZPoly{BigInt(1), BigInt(0), BigInt(-10), BigInt(0), BigInt(1)});
  auto s4 = parse_field_spec(
      "x^3 - 2\nbasis=[[1,0,0],[0,1,0],[0,0,1]]\ndisc=-108\n");
  REQUIRE(s4.basis.has_value());
  CHECK(s4.basis->size() == 3);
  CHECK(*s4.disc == -108);
  NumberField K = build_field(s4);
  CHECK(K.d == 3);
  CHECK(K.r == 1);
  CHECK(K.s == 1);
  CHECK(K.disc == -108);
}

TEST_CASE("field arithmetic") {
  NumberField K = quad_field(-2);
  FieldElem a{Rat(1), Rat(1)};  // 1 + sqrt2
  FieldElem b = K.inv(a);       // -1 + sqrt2
  CHECK(b == FieldElem{Rat(-1), Rat(1)});
  CHECK(K.mul(a, b) == K.one());
  CHECK(K.is_rational(K.mul(a, FieldElem{Rat(-1), Rat(1)})));
}

TEST_CASE("submodule invariants") {
  NumberField K = quad_field(-2);
  // O = Z + Z*2sqrt2: index 2, but the enclosing ideal is all of O_K
  Submodule O1 = submodule(K, {{BigInt(1), BigInt(0)}, {BigInt(0), BigInt(2)}});
  CHECK(O1.index == 2);
  CHECK(O1.ideal_norm == 1);
  CHECK(O1.eta.contains(Rat(1)));

  // O = 2 O_K: index 4, ideal (2) of norm 4, eta = 2
  Submodule O2 = submodule(K, {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(2)}});
  CHECK(O2.index == 4);
  CHECK(O2.ideal_norm == 4);
  CHECK(iv_contains_approx(O2.eta, 2.0, 1e-12));

  Submodule Omax = maximal_order(K);
  CHECK(Omax.index == 1);
  CHECK(Omax.ideal_norm == 1);

  CHECK_THROWS(submodule(K, {{BigInt(1), BigInt(2)}, {BigInt(1), BigInt(2)}}));
}

namespace {

NumberField biquadratic_2_3() {
  // Q(sqrt2, sqrt3) with theta = sqrt2 + sqrt3
  NumberFieldSpec spec;
  spec.defining = {BigInt(1), BigInt(0), BigInt(-10), BigInt(0), BigInt(1)};
  spec.basis = {
      FieldElem{Rat(1), Rat(0), Rat(0), Rat(0)},
      FieldElem{Rat(0), Rat(-9, 2), Rat(0), Rat(1, 2)},   // sqrt2
      FieldElem{Rat(0), Rat(11, 2), Rat(0), Rat(-1, 2)},  // sqrt3
      FieldElem{Rat(-5, 4), Rat(-9, 4), Rat(1, 4), Rat(1, 4)},  // (sqrt2+sqrt6)/2
  };
  spec.disc = BigInt(2304);
  return build_field(spec);
}

}  // namespace

TEST_CASE("extension contexts") {
  NumberField Q = build_field(parse_field_spec("x"));
  NumberField K2 = quad_field(-2);

  ExtensionContext triv = extension_context(K2, K2);
  CHECK(triv.e == 1);
  CHECK(triv.m == 2);
  CHECK(triv.subfield_degrees == std::vector<int>{1});

  ExtensionContext rel = extension_context(K2, Q);
  CHECK(rel.e == 2);
  CHECK(rel.m == 1);
  CHECK(rel.subfield_degrees == std::vector<int>{1});
  CHECK(rel.exact_degrees);

  NumberField K4 = biquadratic_2_3();
  ExtensionContext quart = extension_context(K4, Q);
  CHECK(quart.e == 4);
  CHECK(quart.subfield_degrees == std::vector<int>{1, 2});
  CHECK(quart.exact_degrees);

  // sqrt2 generates a subfield of K4, so Q(sqrt2) embeds
  ExtensionContext rel2 = extension_context(K4, K2);
  CHECK(rel2.e == 2);
  CHECK(rel2.m == 2);
  REQUIRE(rel2.k_generator_in_K.has_value());
  FieldElem g = *rel2.k_generator_in_K;
  CHECK(K4.mul(g, g) == K4.from_rat(Rat(2)));

  // Q(sqrt7) does not embed
  NumberField K7 = quad_field(-7);
  CHECK_THROWS(extension_context(K4, K7));
}
