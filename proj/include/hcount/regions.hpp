#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hcount/lattice.hpp"

namespace hcount {

// Height-region parameters.  Blocks 0..r-1 are real, r..r+s-1 complex, each
// carrying n coordinates.  I is the sorted, 0-based set of blocks whose
// sup-norm is at least 1; on the complement it is forced below 1.
struct RegionSpec {
  int r = 1, s = 0, n = 1;
  std::vector<int> I;
  Rat T = Rat(1);

  CoordLayout layout() const { return {r, s, n}; }
  int d() const { return r + 2 * s; }
  int q() const { return r + s - 1; }
  int block_deg(int i) const { return i < r ? 1 : 2; }
  int d_prime() const;  // sum of d_i over I
  int q_prime() const { return static_cast<int>(I.size()) - 1; }
  bool in_I(int i) const;
  void validate() const;
};

// max_j |z_{i,j}|^{d_i} for block i.  Complex entries enter through their
// squared modulus, so the result stays exact in Q(sqrt M).
Quad block_sup_pow(const QVec& v, const CoordLayout& layout, int i);

// prod_i max(1, |z_i|_oo)^{d_i} <= T, decided exactly.
bool member_Z(const QVec& v, const CoordLayout& layout, const Rat& T);

// member_Z together with |z_i|_oo >= 1 on I and < 1 off I.  Boundary
// |z_i|_oo = 1 counts toward I.  Exactly one I accepts any given point.
bool member_SI(const QVec& v, const RegionSpec& spec);

// 2^{rn} pi^{sn} (-1)^{q'} (-1 + T^n sum_{i<=q'} (-log T^n)^i / i!) for a
// nonempty I with q' = |I|-1; the empty set contributes the constant
// 2^{rn} pi^{sn}.  Only |I| matters.
double vol_SI(int r, int s, int n, int I_size, double T);
double vol_SI(const RegionSpec& spec);

// 2^{rn} pi^{sn} T^n L_q(-log T^n), expanded as sum_i binom(q,i)/i! T^n log^i.
double vol_Z(int r, int s, int n, double T);

// One sigma-basis vector of the hyperplane {sum x_i = 0}: the unit vector is
// v / sqrt(c) with c = |v|^2, both kept rational.
struct SigmaVec {
  std::vector<Rat> v;
  Rat c;
};

struct PartitionData {
  RegionSpec spec;
  std::vector<SigmaVec> sigma_basis;  // q' vectors in R^{q'+1}
  std::vector<Rat> delta;             // (d_i/d')_I
  Interval logT;
  std::optional<Rat> exact_logT;
  std::vector<std::vector<long>> m_F;  // lexicographically sorted

  bool in_mF(const std::vector<long>& j) const;
};

// Cells j with F_j != empty, F = (R_{>=0}^{q'+1} - delta log T) on the
// hyperplane.  Membership is decided by outward-rounded feasibility tests;
// a cell still undecided after escalation is kept (a superset of the true
// m_F only adds cells that collect no points).  Passing exact_logT replaces
// the log T enclosure by an exact rational, which makes q' = 1 instances
// fully decidable.
PartitionData build_partition(const RegionSpec& spec,
                              std::optional<Rat> exact_logT = std::nullopt);

struct CellTransform {
  std::vector<long> j;
  std::vector<Interval> u;          // u(j) = sum_p j_p e_p, over I positions
  std::vector<Interval> gamma;      // gamma_i = exp(-u_i / d_i)
  std::vector<Interval> block_scale;  // composite psi_j diagonal, per block
  bool invariants_ok = false;  // prod gamma^{d_i} = 1 and det psi_j = 1,
                               // checked on the rational exponents
};

CellTransform cell_transform(const PartitionData& part,
                             const std::vector<long>& j);

// Exact |L cap S_I(T)| by box enumeration and exact membership.
long long count_SI_direct(const EuclideanLattice& L, const RegionSpec& spec,
                          std::uint64_t cap = 100000000);

// Exact cell index of a point of S_I(T): j_p = floor(<x, e_p>) for
// x = w - delta * (sum w), w = (d_i log |z_i|_oo)_I.  The floor is decided
// by reducing the log terms to a multiplicatively independent set first, so
// exact boundary hits resolve symbolically.
std::vector<long> assign_cell(const QVec& v, const PartitionData& part);

struct PartitionedCount {
  long long total = 0;
  std::vector<std::pair<std::vector<long>, long long>> per_cell;
  bool disjoint_ok = true;  // every point claimed by exactly one cell of m_F
  bool kappa_ok = true;     // |psi_j v| <= kappa T^{1/d} for every point
};

// Per-cell counts over the fundamental-cell partition; the total must equal
// count_SI_direct exactly.  Cells are processed independently.
PartitionedCount count_SI_partitioned(const EuclideanLattice& L,
                                      const RegionSpec& spec,
                                      const PartitionData& part,
                                      std::uint64_t cap = 100000000);

// Membership in S_F(T) = {(z_i)_I : (d_i log|z_i|_oo)_I in F + delta(-oo,
// log T]} where F = (R_{>=0}^{q'+1} - delta * F_log) on the hyperplane is a
// fixed set, independent of T, so that S_F(T) = T^{1/d'} S_F(1).  Only the
// I blocks are inspected; they must be nonzero.  nullopt when the enclosure
// cannot separate a boundary tie.
std::optional<bool> member_SF(const QVec& v, const RegionSpec& spec,
                              const Rat& F_log);

struct McEstimate {
  double estimate = 0;
  double sigma = 0;
  std::uint64_t samples = 0;
};

McEstimate mc_volume_Z(int r, int s, int n, double T, std::uint64_t samples,
                       std::uint64_t seed);
McEstimate mc_volume_SI(const RegionSpec& spec, std::uint64_t samples,
                        std::uint64_t seed);

}  // namespace hcount
