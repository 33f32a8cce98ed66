#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcount/poly.hpp"
#include "hcount/quad.hpp"

namespace hcount {

// Coordinates with respect to the power basis 1, t, ..., t^(d-1) of the
// root t of the defining polynomial.
using FieldElem = std::vector<Rat>;

struct NumberFieldSpec {
  ZPoly defining;  // monic irreducible, ascending coefficients
  std::optional<std::vector<FieldElem>> basis;  // integral basis, power coords
  std::optional<BigInt> disc;                   // field discriminant
};

// Parses the field description format:
//   either a sparse polynomial line like "x^2 - 2" / "x^4 - 10x^2 + 1"
//   or a dense line "[c0, c1, ..., cd]",
//   optionally followed by "basis=[[...],...]" and "disc=<integer>" lines.
NumberFieldSpec parse_field_spec(const std::string& text);

class NumberField {
 public:
  ZPoly defining;
  int d = 0, r = 0, s = 0;
  int unit_rank = 0;  // r + s - 1
  BigInt disc;
  std::vector<FieldElem> integral_basis;
  RootDecomposition roots;  // real roots ascending, then upper-half complex

  // Exact embedding data, available when d <= 2.
  bool quad_exact = false;
  BigInt M = 0;       // positive squarefree radicand of the embeddings
  Rat theta_a, theta_b;  // real case: sigma_i(t) = theta_a -+/+ theta_b*sqrt(M)
                         // complex case: t = theta_a + i*theta_b*sqrt(M)

  // Minkowski constant 2^r (2 pi)^s / sqrt(|disc|).
  Interval minkowski_constant(int digits = 30) const;

  FieldElem zero() const { return FieldElem(d, Rat(0)); }
  FieldElem one() const;
  FieldElem from_rat(const Rat& x) const;
  FieldElem add(const FieldElem& x, const FieldElem& y) const;
  FieldElem sub(const FieldElem& x, const FieldElem& y) const;
  FieldElem mul(const FieldElem& x, const FieldElem& y) const;
  FieldElem inv(const FieldElem& x) const;  // throws on zero
  bool is_zero(const FieldElem& x) const;
  bool is_rational(const FieldElem& x) const;

  // sigma_i for i in [0, r+s): real embeddings first (descending root order,
  // sigma_1 sends the generator to the largest real root),
  // then complex ones.  Exact values exist only when quad_exact.
  Quad embed_real_exact(const FieldElem& x, int i) const;
  // complex embedding as (re, im), exact (d == 2, s == 1)
  std::pair<Quad, Quad> embed_complex_exact(const FieldElem& x) const;
  // interval embedding for any degree; i < r gives the real embeddings,
  // r <= i < r+s gives (re, im) of the upper-half complex ones
  Interval embed_iv(const FieldElem& x, int i, int digits = 30);
  std::pair<Interval, Interval> embed_complex_iv(const FieldElem& x, int i,
                                                 int digits = 30);

  // Coordinates of x with respect to the integral basis; throws when x is
  // not in the span.
  std::vector<Rat> to_integral_coords(const FieldElem& x) const;
  FieldElem from_integral_coords(const std::vector<Rat>& c) const;
};

// Builds the field invariants.  For d <= 2 the maximal order is computed
// exactly; for d > 2 the spec must carry an integral basis and the field
// discriminant, which are validated for consistency.
NumberField build_field(const NumberFieldSpec& spec);

struct Submodule {
  // Columns are the coordinates of the submodule basis with respect to the
  // integral basis of the maximal order.
  std::vector<std::vector<BigInt>> basis;
  BigInt index;       // [O_K : O]
  BigInt ideal_norm;  // norm of the smallest O_K-ideal containing O
  Interval eta;       // ideal_norm^(1/d)
};

Submodule submodule(const NumberField& K,
                    const std::vector<std::vector<BigInt>>& basis);
Submodule maximal_order(const NumberField& K);

struct ExtensionContext {
  NumberField K, k;
  int e = 1;  // [K : k]
  int m = 1;  // [k : Q]
  std::vector<int> subfield_degrees;  // degrees [K0 : k] of proper
                                      // intermediate fields, always incl. 1
  bool exact_degrees = true;  // false when a conservative superset is used
  std::optional<FieldElem> k_generator_in_K;
};

// Verifies that k embeds in K and assembles the relative invariants.
// The intermediate-degree set is exact for prime e and for [K:Q] <= 4 with
// k = Q; otherwise the divisor superset is returned with a flag.
ExtensionContext extension_context(const NumberField& K, const NumberField& k);

}  // namespace hcount
