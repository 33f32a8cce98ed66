#pragma once

#include <cstdint>
#include <vector>

#include "hcount/lattice.hpp"

namespace hcount {

// One integral point of O^n together with its exact height data.
struct AlgebraicPoint {
  // per slot j, integer coordinates with respect to the submodule basis
  std::vector<std::vector<BigInt>> coords;
  std::vector<FieldElem> elems;  // the n field elements, power-basis coords
  Quad height_pow_d;             // exact H^d
};

// H(alpha)^d = prod_i max(1, max_j |sigma_i alpha_j|)^{d_i}.  Complex blocks
// enter through the squared modulus, so the value stays in Q(sqrt M).
// Requires exact embeddings (deg K <= 2).
Quad height_pow_d(const NumberField& K, const std::vector<FieldElem>& pt);

// Certified enclosure of H itself.
Interval weil_height(const NumberField& K, const std::vector<FieldElem>& pt,
                     int digits = 30);

// H <= X, decided exactly as H^d <= X^d.
bool height_leq(const NumberField& K, const std::vector<FieldElem>& pt,
                const Rat& X);

// Sorted set of embedding blocks whose coordinate sup-norm is >= 1; empty
// exactly for the zero point.  Matches the boundary rule of member_SI.
std::vector<int> I_signature(const NumberField& K,
                             const std::vector<FieldElem>& pt);

// All points of O^n with H <= X, in the lexicographic order of their
// submodule coordinates.  The zero point is included.
std::vector<AlgebraicPoint> enumerate_heightball(const NumberField& K,
                                                 const Submodule& O, int n,
                                                 const Rat& X,
                                                 std::uint64_t cap = 100000000);

struct ClassificationTag {
  int degree_over_k = 1;       // [k(alpha_1,...,alpha_n) : k]
  int ratio_field_degree = 1;  // [k(ratios alpha_i/alpha_j) : k]
  bool projectively_primitive = false;  // nonzero and ratio field all of K
  bool is_npp = false;  // degree e over k but not projectively primitive;
                        // the zero point is npp exactly when e = 1
  std::vector<int> I;   // I_signature
};

// Exact classification of a point of O_K^n relative to K/k.  The degrees are
// computed by linear algebra on the generated subalgebras, never numerically.
ClassificationTag classify(const ExtensionContext& ctx,
                           const std::vector<FieldElem>& pt);

struct CensusResult {
  Rat X;
  long long total = 0;       // |{alpha in O^n : H <= X}|, zero included
  long long zero_count = 0;  // the empty-signature bucket
  // nonzero points keyed by I_signature, sorted lexicographically
  std::vector<std::pair<std::vector<int>, long long>> per_I;
  // keyed by (degree_over_k, ratio_field_degree), sorted
  std::vector<std::pair<std::pair<int, int>, long long>> per_class;
  long long primitive_count = 0;
  long long npp_count = 0;
  bool partition_ok = false;  // zero_count + sum per_I == total
  double wall_seconds = 0;
};

// Full enumeration + classification sweep.  threads = 0 picks a default.
CensusResult run_census(const ExtensionContext& ctx, const Submodule& O, int n,
                        const Rat& X, std::uint64_t cap = 100000000,
                        int threads = 0);

// Nonzero alpha in O_k whose largest real conjugate dominates: |sigma_1| >= 1
// and every other conjugate lies strictly inside the unit disc (signature
// {0}), with H <= X.  k must have a real embedding.
long long count_pisot(const NumberField& k, const Rat& X,
                      std::uint64_t cap = 100000000);

struct FieldCount {
  BigInt disc;
  long long count = 0;
};

struct OkneCount {
  long long total = 0;
  Rat t_bound, u_bound;  // coefficient box that provably covers all fields
  std::vector<BigInt> candidate_discs;  // every discriminant the box produces
  std::vector<FieldCount> per_field;    // nonzero contributions only
};

// |{alpha in O_kbar^n : [k(alpha) : k] = e, H(alpha) <= X}|.  e = 1 counts
// O_k^n directly (zero included).  e = 2 requires k = Q: the candidate
// quadratic fields are derived from the minimal polynomials x^2 - t x + u
// with |t| <= 2X^2, |u| <= X^4, every conjugate of a qualifying coordinate
// being bounded by X^2; each field is then swept exactly.
OkneCount count_O_k_n_e(const NumberField& k, int n, int e, const Rat& X,
                        std::uint64_t cap = 100000000);

struct DeltaBound {
  Quad delta_pow_d;  // H(witness)^d
  Interval delta;
  bool exact = false;  // minimum over all integral pairs (Northcott: any pair
                       // outside the search ball is strictly higher)
  std::vector<FieldElem> witness;  // the minimizing pair (alpha, beta)
};

// min H(alpha, beta) over integral pairs with [k(alpha):k] = g and
// k(alpha, beta) = K, searched up to H <= search_bound.  K = k admits the
// zero pair, giving delta = 1 exactly.  Throws when no witness exists below
// the bound.  This upper-bounds the infimum over all algebraic pairs.
DeltaBound delta_g_upper(const ExtensionContext& ctx, int g,
                         const Rat& search_bound,
                         std::uint64_t cap = 100000000);

// All quadratic fields with |disc| <= bound, ordered by (|disc|, disc).
std::vector<NumberField> quadratic_census(const BigInt& disc_bound);

// Number of points of O^n with H <= X that generate K over k but whose
// ratio field is a proper subfield.  For e = 1 this is exactly 1 (the zero
// point).
long long npp_census(const ExtensionContext& ctx, const Submodule& O, int n,
                     const Rat& X, std::uint64_t cap = 100000000);

}  // namespace hcount
